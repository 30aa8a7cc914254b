#pragma once

#include <cmath>

namespace metricline {

// Truncated second-order Taylor scalar. Carries a value, two first-order
// seed coefficients and the mixed second-order coefficient, so evaluating
// f(seed_x(x), seed_y(y)) yields dxy = d2f/dxdy exactly for smooth f.
//
// The value slot performs exactly the same double operations, in the same
// order, as a plain-double evaluation; code relying on bitwise agreement
// between the two paths depends on this.
struct HyperDual {
    double v   = 0.0;
    double dx  = 0.0;
    double dy  = 0.0;
    double dxy = 0.0;

    HyperDual() = default;
    HyperDual(double value) : v(value) {}
    HyperDual(double value, double d1, double d2, double d12)
        : v(value), dx(d1), dy(d2), dxy(d12) {}

    static HyperDual seed_x(double x) { return HyperDual(x, 1.0, 0.0, 0.0); }
    static HyperDual seed_y(double y) { return HyperDual(y, 0.0, 1.0, 0.0); }
};

inline double scalar_value(const HyperDual& a) { return a.v; }
inline bool scalar_has_seed(const HyperDual& a) {
    return a.dx != 0.0 || a.dy != 0.0 || a.dxy != 0.0;
}

inline HyperDual operator-(const HyperDual& a) {
    return {-a.v, -a.dx, -a.dy, -a.dxy};
}

inline HyperDual operator+(const HyperDual& a, const HyperDual& b) {
    return {a.v + b.v, a.dx + b.dx, a.dy + b.dy, a.dxy + b.dxy};
}

inline HyperDual operator-(const HyperDual& a, const HyperDual& b) {
    return {a.v - b.v, a.dx - b.dx, a.dy - b.dy, a.dxy - b.dxy};
}

// The mixed term is grouped as (a.dx*b.dy + a.dy*b.dx) so that exchanging
// the roles of the two seeds produces bitwise-identical results.
inline HyperDual operator*(const HyperDual& a, const HyperDual& b) {
    return {a.v * b.v,
            a.dx * b.v + a.v * b.dx,
            a.dy * b.v + a.v * b.dy,
            a.v * b.dxy + (a.dx * b.dy + a.dy * b.dx) + a.dxy * b.v};
}

// Solves r*b = a coefficient by coefficient; keeps the value slot equal to
// the plain double quotient a.v/b.v.
inline HyperDual operator/(const HyperDual& a, const HyperDual& b) {
    HyperDual r;
    r.v  = a.v / b.v;
    r.dx = (a.dx - r.v * b.dx) / b.v;
    r.dy = (a.dy - r.v * b.dy) / b.v;
    r.dxy = (a.dxy - (r.dx * b.dy + r.dy * b.dx) - r.v * b.dxy) / b.v;
    return r;
}

// Unary chain rule: r = f(a) with f(a.v)=f0, f'(a.v)=f1, f''(a.v)=f2.
// A seedless argument short-circuits to a constant, so singular f1/f2
// (e.g. sqrt at 0) cannot contaminate the result with inf*0.
inline HyperDual hd_chain(const HyperDual& a, double f0, double f1, double f2) {
    if (!scalar_has_seed(a)) return HyperDual(f0);
    return {f0, f1 * a.dx, f1 * a.dy, f2 * (a.dx * a.dy) + f1 * a.dxy};
}

inline HyperDual sqrt(const HyperDual& a) {
    const double s = std::sqrt(a.v);
    return hd_chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline HyperDual exp(const HyperDual& a) {
    const double e = std::exp(a.v);
    return hd_chain(a, e, e, e);
}

inline HyperDual log(const HyperDual& a) {
    return hd_chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}

// General power a^b for base > 0 (and base == 0 with seedless operands).
// Each operand contributes only when it carries a seed, again to avoid
// inf*0 at the domain boundary.
inline HyperDual pow_general(const HyperDual& a, const HyperDual& b) {
    const double f0 = std::pow(a.v, b.v);
    const bool sa = scalar_has_seed(a);
    const bool sb = scalar_has_seed(b);
    if (!sa && !sb) return HyperDual(f0);

    HyperDual r(f0);
    const double la = sb ? std::log(a.v) : 0.0;
    if (sa) {
        const double fa  = b.v * std::pow(a.v, b.v - 1.0);
        const double faa = b.v * (b.v - 1.0) * std::pow(a.v, b.v - 2.0);
        r.dx += fa * a.dx;
        r.dy += fa * a.dy;
        r.dxy += faa * (a.dx * a.dy) + fa * a.dxy;
    }
    if (sb) {
        const double fb  = f0 * la;
        const double fbb = fb * la;
        r.dx += fb * b.dx;
        r.dy += fb * b.dy;
        r.dxy += fbb * (b.dx * b.dy) + fb * b.dxy;
    }
    if (sa && sb) {
        const double fab = std::pow(a.v, b.v - 1.0) * (1.0 + b.v * la);
        r.dxy += fab * (a.dx * b.dy + a.dy * b.dx);
    }
    return r;
}

} // namespace metricline
