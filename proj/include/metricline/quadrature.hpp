#pragma once

#include <cmath>
#include <stdexcept>

namespace metricline {

// Adaptive Simpson with an absolute error target. Recursion depth is capped;
// hitting the cap raises, callers treat that as a non-convergent integrand.
template <class Fn>
double integrate_adaptive(const Fn& f, double a, double b, double tol, int max_depth = 28) {
    struct Impl {
        const Fn& f;
        int max_depth;
        double step(double a, double fa, double b, double fb, double m, double fm, double whole,
                    double tol, int depth) const {
            const double lm = 0.5 * (a + m);
            const double rm = 0.5 * (m + b);
            const double flm = f(lm);
            const double frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            const double delta = left + right - whole;
            if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
            if (depth >= max_depth)
                throw std::runtime_error("adaptive quadrature did not reach the error target");
            return step(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
                   step(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
        }
    };
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Impl{f, max_depth}.step(a, fa, b, fb, m, fm, whole, tol, 0);
}

} // namespace metricline
