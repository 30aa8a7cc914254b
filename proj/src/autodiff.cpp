#include "metricline/autodiff.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace metricline {

const char* to_string(DerivStatus s) {
    switch (s) {
        case DerivStatus::ExactAd: return "exact-AD";
        case DerivStatus::ConvergedFd: return "converged-FD";
        case DerivStatus::NotConverged: return "not-converged";
    }
    return "?";
}

namespace {

EvalSettings ad_settings(Point p, const CheckConfig& cfg) {
    EvalSettings st;
    st.kink_tol = cfg.kink_tol * std::max({1.0, std::fabs(p.x), std::fabs(p.y)});
    return st;
}

double fd_scale(Point p) { return std::max({1.0, std::fabs(p.x), std::fabs(p.y)}); }

// Runs a difference-quotient ladder q(h_k), h_k = scale*2^-k, applying one
// Richardson level with the given error-order ratio, and stops at the first
// pair of successive extrapolated estimates within tol.
DerivativeEstimate ladder(const std::function<double(double)>& quotient, double scale, int k0,
                          int k1, double richardson_ratio, double tol) {
    DerivativeEstimate best;
    best.status = DerivStatus::NotConverged;
    best.residual = std::numeric_limits<double>::infinity();

    double prev_q = 0.0;
    double prev_r = 0.0;
    bool have_q = false;
    bool have_r = false;
    int steps = 0;
    for (int k = k0; k <= k1; ++k) {
        double q;
        try {
            q = quotient(std::ldexp(scale, -k));
        } catch (const DomainError&) {
            break;
        }
        ++steps;
        if (!std::isfinite(q)) break;
        if (have_q) {
            const double r = (richardson_ratio * q - prev_q) / (richardson_ratio - 1.0);
            if (have_r) {
                const double change = std::fabs(r - prev_r);
                best.value = r;
                best.residual = change;
                best.steps_used = steps;
                if (change <= tol * (1.0 + std::fabs(r))) {
                    best.status = DerivStatus::ConvergedFd;
                    return best;
                }
            }
            prev_r = r;
            have_r = true;
        }
        prev_q = q;
        have_q = true;
    }
    if (have_r && best.steps_used == 0) {
        best.value = prev_r;
        best.steps_used = steps;
    }
    return best;
}

} // namespace

bool smooth_at(const MetricCandidate& d, Point p, const CheckConfig& cfg) {
    EvalDiag diag;
    try {
        d(HyperDual::seed_x(p.x), HyperDual::seed_y(p.y), ad_settings(p, cfg), &diag);
    } catch (const DomainError&) {
        return false;
    }
    return diag.kink_count == 0;
}

DerivativeEstimate cross_partial_fd(const MetricCandidate& d, Point p, const CheckConfig& cfg) {
    auto quotient = [&](double h) {
        const double fpp = d.value(p.x + h, p.y + h);
        const double fpm = d.value(p.x + h, p.y - h);
        const double fmp = d.value(p.x - h, p.y + h);
        const double fmm = d.value(p.x - h, p.y - h);
        return ((fpp - fpm) - (fmp - fmm)) / (4.0 * h * h);
    };
    // second-order stencil: shallower ladder than the one-sided quotients,
    // error ratio 4 per halving
    DerivativeEstimate est = ladder(quotient, fd_scale(p), 4, 16, 4.0, cfg.tol_fd);
    est.kink_fallback = true;
    return est;
}

DerivativeEstimate cross_partial(const MetricCandidate& d, Point p, const CheckConfig& cfg) {
    // domain errors propagate; only kinks fall back to differences
    EvalDiag diag;
    HyperDual r = d(HyperDual::seed_x(p.x), HyperDual::seed_y(p.y), ad_settings(p, cfg), &diag);
    if (diag.kink_count == 0 && std::isfinite(r.dxy)) {
        DerivativeEstimate est;
        est.value = r.dxy;
        est.status = DerivStatus::ExactAd;
        est.residual = 0.0;
        est.steps_used = 1;
        return est;
    }
    return cross_partial_fd(d, p, cfg);
}

DerivativeEstimate one_sided_partial(const MetricCandidate& d, Point p, int axis, int dir,
                                     const CheckConfig& cfg) {
    // AD fast path: a kink-free hyper-dual evaluation means the tree is
    // locally smooth, so the one-sided limit equals dir * (full partial).
    EvalDiag diag;
    HyperDual r = d(HyperDual::seed_x(p.x), HyperDual::seed_y(p.y), ad_settings(p, cfg), &diag);
    const double partial = axis == 1 ? r.dx : r.dy;
    if (diag.kink_count == 0 && std::isfinite(partial)) {
        DerivativeEstimate est;
        est.value = dir > 0 ? partial : -partial;
        est.status = DerivStatus::ExactAd;
        est.steps_used = 1;
        return est;
    }

    const double base = d.value(p.x, p.y);
    auto quotient = [&](double h) {
        const double xs = axis == 1 ? p.x + dir * h : p.x;
        const double ys = axis == 2 ? p.y + dir * h : p.y;
        return (d.value(xs, ys) - base) / h;
    };
    DerivativeEstimate est = ladder(quotient, fd_scale(p), cfg.fd_k0, cfg.fd_k1, 2.0, cfg.tol_fd);
    est.kink_fallback = true;
    return est;
}

DerivativeEstimate first_partial(const MetricCandidate& d, Point p, int axis,
                                 const CheckConfig& cfg) {
    EvalDiag diag;
    HyperDual r = d(HyperDual::seed_x(p.x), HyperDual::seed_y(p.y), ad_settings(p, cfg), &diag);
    const double partial = axis == 1 ? r.dx : r.dy;
    if (diag.kink_count == 0 && std::isfinite(partial)) {
        DerivativeEstimate est;
        est.value = partial;
        est.status = DerivStatus::ExactAd;
        est.steps_used = 1;
        return est;
    }
    auto quotient = [&](double h) {
        const double xp = axis == 1 ? p.x + h : p.x;
        const double yp = axis == 2 ? p.y + h : p.y;
        const double xm = axis == 1 ? p.x - h : p.x;
        const double ym = axis == 2 ? p.y - h : p.y;
        return (d.value(xp, yp) - d.value(xm, ym)) / (2.0 * h);
    };
    DerivativeEstimate est = ladder(quotient, fd_scale(p), 4, 20, 4.0, cfg.tol_fd);
    est.kink_fallback = true;
    return est;
}

GradientEstimate gradient(const MetricCandidate& d, Point p, const CheckConfig& cfg) {
    GradientEstimate g;
    g.d1 = first_partial(d, p, 1, cfg);
    g.d2 = first_partial(d, p, 2, cfg);
    g.norm = std::sqrt(g.d1.value * g.d1.value + g.d2.value * g.d2.value);
    return g;
}

} // namespace metricline
