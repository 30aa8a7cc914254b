#include "metricline/necessary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace metricline {

namespace {

bool usable(const DerivativeEstimate& e) {
    return e.status != DerivStatus::NotConverged && std::isfinite(e.value);
}

// Nested one-sided estimate: outer quotient over H of the inner one-sided
// slope along the first axis, with one Richardson level. The outer ladder is
// much shallower than the first-order one; dividing an inner estimate's
// noise by a tiny H would otherwise swamp the limit.
DerivativeEstimate nested_outer(const MetricCandidate& d, Point p, const CheckConfig& cfg) {
    DerivativeEstimate base = one_sided_partial(d, p, 1, +1, cfg);
    DerivativeEstimate out;
    out.status = DerivStatus::NotConverged;
    out.residual = std::numeric_limits<double>::infinity();
    if (!usable(base)) return out;

    const double scale = std::max({1.0, std::fabs(p.x), std::fabs(p.y)});
    double prev_q = 0.0, prev_r = 0.0;
    bool have_q = false, have_r = false;
    int steps = 0;
    for (int k = 3; k <= 14; ++k) {
        const double H = std::ldexp(scale, -k);
        DerivativeEstimate shifted;
        try {
            shifted = one_sided_partial(d, {p.x - H, p.y}, 1, +1, cfg);
        } catch (const DomainError&) {
            break;
        }
        if (!usable(shifted)) break;
        const double q = (shifted.value - base.value) / H;
        ++steps;
        if (have_q) {
            const double r = 2.0 * q - prev_q;
            if (have_r) {
                out.value = r;
                out.residual = std::fabs(r - prev_r);
                out.steps_used = steps;
                if (out.residual <= cfg.tol_nec2 * 0.1 * (1.0 + std::fabs(r))) {
                    out.status = DerivStatus::ConvergedFd;
                    return out;
                }
            }
            prev_r = r;
            have_r = true;
        }
        prev_q = q;
        have_q = true;
    }
    return out;
}

} // namespace

FirstOrderResult check_first_order_bound(const MetricCandidate& d,
                                         const std::vector<Point>& points,
                                         const CheckConfig& cfg) {
    FirstOrderResult res;
    std::map<std::pair<double, int>, DerivativeEstimate> bound_cache;
    auto diagonal_bound = [&](double y, int dir) -> const DerivativeEstimate& {
        auto key = std::make_pair(y, dir);
        auto it = bound_cache.find(key);
        if (it == bound_cache.end()) {
            DerivativeEstimate est;
            try {
                est = one_sided_partial(d, {y, y}, 2, dir, cfg);
            } catch (const DomainError&) {
                est.status = DerivStatus::NotConverged;
            }
            it = bound_cache.emplace(key, est).first;
        }
        return it->second;
    };

    for (const Point& p : points) {
        for (int dir : {+1, -1}) {
            ++res.points;
            DerivativeEstimate lhs;
            try {
                lhs = one_sided_partial(d, p, 2, dir, cfg);
            } catch (const DomainError&) {
                ++res.skips;
                continue;
            }
            const DerivativeEstimate& bound = diagonal_bound(p.y, dir);
            if (!usable(lhs) || !usable(bound)) {
                ++res.skips;
                continue;
            }
            const double excess =
                std::fabs(lhs.value) - std::fabs(bound.value) -
                cfg.tol_nec * (1.0 + std::fabs(bound.value));
            if (excess > 0.0)
                res.witnesses.push_back({p, dir, std::fabs(lhs.value), std::fabs(bound.value)});
        }
    }
    std::sort(res.witnesses.begin(), res.witnesses.end(),
              [](const FirstOrderWitness& a, const FirstOrderWitness& b) {
                  const double ea = a.slope - a.bound;
                  const double eb = b.slope - b.bound;
                  if (ea != eb) return ea > eb;
                  return std::tie(a.p.x, a.p.y, a.dir) < std::tie(b.p.x, b.p.y, b.dir);
              });
    return res;
}

DiagonalResult check_diagonal_positivity(const MetricCandidate& d, const std::vector<double>& xs,
                                         const CheckConfig& cfg) {
    DiagonalResult res;
    for (double x : xs) {
        ++res.points;
        DerivativeEstimate s2, s1;
        try {
            s2 = one_sided_partial(d, {x, x}, 2, +1, cfg);
            s1 = one_sided_partial(d, {x, x}, 1, +1, cfg);
        } catch (const DomainError&) {
            ++res.skips;
            continue;
        }
        if (!usable(s2) || !usable(s1)) {
            ++res.skips;
            continue;
        }
        DiagonalWitness w;
        w.x = x;
        w.slope2 = s2.value;
        w.slope1 = s1.value;
        w.nonpositive = s2.value <= cfg.tol_pos;
        w.mismatched = std::fabs(s1.value - s2.value) > cfg.tol_nec * (1.0 + std::fabs(s2.value));
        if (w.nonpositive || w.mismatched) res.witnesses.push_back(w);
    }
    std::sort(res.witnesses.begin(), res.witnesses.end(),
              [](const DiagonalWitness& a, const DiagonalWitness& b) {
                  if (a.slope2 != b.slope2) return a.slope2 < b.slope2;
                  return a.x < b.x;
              });
    return res;
}

SecondOrderResult check_second_order(const MetricCandidate& d, const std::vector<Point>& points,
                                     const CheckConfig& cfg) {
    SecondOrderResult res;
    std::map<double, DerivativeEstimate> lhs_cache;
    for (const Point& p : points) {
        ++res.points;
        auto it = lhs_cache.find(p.x);
        if (it == lhs_cache.end()) {
            DerivativeEstimate lhs;
            try {
                lhs = nested_outer(d, {p.x, p.x}, cfg);
            } catch (const DomainError&) {
                lhs.status = DerivStatus::NotConverged;
            }
            it = lhs_cache.emplace(p.x, lhs).first;
        }
        const DerivativeEstimate& lhs = it->second;
        if (!usable(lhs)) {
            ++res.skips;
            continue;
        }
        DerivativeEstimate rhs;
        try {
            rhs = nested_outer(d, p, cfg);
        } catch (const DomainError&) {
            ++res.skips;
            continue;
        }
        if (!usable(rhs)) {
            ++res.skips;
            continue;
        }
        if (lhs.value > rhs.value + cfg.tol_nec2 * (1.0 + std::fabs(rhs.value)))
            res.witnesses.push_back({p, lhs.value, rhs.value});
    }
    std::sort(res.witnesses.begin(), res.witnesses.end(),
              [](const SecondOrderWitness& a, const SecondOrderWitness& b) {
                  const double ea = a.lhs - a.rhs;
                  const double eb = b.lhs - b.rhs;
                  if (ea != eb) return ea > eb;
                  return std::tie(a.p.x, a.p.y) < std::tie(b.p.x, b.p.y);
              });
    return res;
}

NecessaryReport run_necessary_battery(const MetricCandidate& d, const CheckConfig& cfg) {
    NecessaryReport report;

    const std::vector<double> axis = axis_magnitudes(cfg);
    std::vector<Point> grid;
    for (double x : axis)
        for (double y : axis)
            if (diag_gap({x, y}) >= cfg.diag_band * local_scale({x, y})) grid.push_back({x, y});

    report.first_order = check_first_order_bound(d, grid, cfg);
    report.diagonal = check_diagonal_positivity(d, axis, cfg);

    // the nested estimates are costly; probe a coarse sub-lattice
    std::vector<Point> coarse;
    for (double x : {0.0, 1.0, -1.0, 3.1622776601683795, -3.1622776601683795})
        for (double y : {0.0, 0.5, -0.5, 2.0, -2.0, 10.0})
            if (diag_gap({x, y}) >= cfg.diag_band * local_scale({x, y})) coarse.push_back({x, y});
    report.second_order = check_second_order(d, coarse, cfg);
    return report;
}

} // namespace metricline
