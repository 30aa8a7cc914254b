#include "metricline/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "metricline/parallel.hpp"
#include "metricline/quadrature.hpp"

namespace metricline {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

bool usable(const DerivativeEstimate& e) {
    return e.status != DerivStatus::NotConverged && std::isfinite(e.value);
}

} // namespace

std::vector<Point> build_grid2d(const CheckConfig& cfg, const LambdaSet& lambda,
                                bool exclude_lambda_band) {
    std::vector<Point> pts;
    const std::vector<double> axis = axis_magnitudes(cfg);
    auto admit = [&](const Point& p) {
        const double scale = local_scale(p);
        if (diag_gap(p) < cfg.diag_band * scale) return false;
        if (exclude_lambda_band && lambda.gap(p.x, p.y) < cfg.lambda_band * scale) return false;
        return true;
    };
    for (double x : axis)
        for (double y : axis)
            if (admit({x, y})) pts.push_back({x, y});

    const double span = cfg.grid_exp_max - cfg.grid_exp_min;
    for (const Point& u : quasi_random_unit(cfg.quasi_random_points, cfg.rng_seed)) {
        auto signed_log = [&](double t) {
            const double s = 2.0 * t - 1.0;
            const double mag = std::pow(10.0, cfg.grid_exp_min + span * std::fabs(s));
            return s < 0.0 ? -mag : mag;
        };
        Point p{signed_log(u.x), signed_log(u.y)};
        if (admit(p)) pts.push_back(p);
    }
    return pts;
}

H1Result check_H1(const MetricCandidate& d, const CheckConfig& cfg) {
    H1Result res;
    res.min_off = std::numeric_limits<double>::infinity();
    for (double t : axis_magnitudes(cfg)) {
        try {
            const double v = d.value(t, t);
            ++res.diag_probes;
            res.max_diag = std::max(res.max_diag, std::fabs(v));
            if (std::fabs(v) > cfg.tol_pos && !res.witness) {
                res.witness = Violation{ViolationKind::Positivity, {t, t}, std::fabs(v),
                                        "d(x,x) does not vanish"};
            }
        } catch (const DomainError&) {
            ++res.domain_errors;
        }
    }
    for (const Point& p : build_grid2d(cfg, d.lambda, false)) {
        try {
            const double v = d.value(p.x, p.y);
            ++res.off_probes;
            res.min_off = std::min(res.min_off, v);
            // strict positivity has no natural absolute floor: genuine
            // metrics take arbitrarily small values far out, so only a
            // non-positive sign is a witness
            if (v <= 0.0 && !res.witness) {
                res.witness = Violation{ViolationKind::Positivity, {p.x, p.y},
                                        std::max(0.0, -v), "d(x,y) not positive off the diagonal"};
            }
        } catch (const DomainError&) {
            ++res.domain_errors;
        }
    }
    res.pass = !res.witness && res.domain_errors == 0;
    return res;
}

H2Result check_H2(const MetricCandidate& d, const CheckConfig& cfg) {
    H2Result res;
    res.structural = !d.reparam && structurally_symmetric(d.expr);
    for (const Point& p : build_grid2d(cfg, d.lambda, false)) {
        try {
            const double v = d.value(p.x, p.y);
            const double w = d.value(p.y, p.x);
            ++res.probes;
            const double asym = std::fabs(v - w);
            res.max_asym = std::max(res.max_asym, asym);
            if (asym > cfg.tol_sym * (1.0 + std::fabs(v)) && !res.witness) {
                res.witness =
                    Violation{ViolationKind::Symmetry, {p.x, p.y}, asym, "d(x,y) != d(y,x)"};
            }
        } catch (const DomainError&) {
        }
        if (res.structural && res.probes >= 64) break;  // structural proof, spot checks only
    }
    res.pass = !res.witness;
    return res;
}

H3Result check_H3(const MetricCandidate& d, const CheckConfig& cfg, bool exclude_lambda_band) {
    H3Result res;
    res.band = cfg.diag_band;
    res.min_value = std::numeric_limits<double>::infinity();
    res.min_margin = std::numeric_limits<double>::infinity();

    const std::vector<Point> grid = build_grid2d(cfg, d.lambda, exclude_lambda_band);
    struct Slot {
        int state = 0;  // 0 skip, 1 value, 2 kink-skip
        double value = 0.0;
        double margin = 0.0;
    };
    std::vector<Slot> slots(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const Point p = grid[i];
        try {
            DerivativeEstimate est = cross_partial(d, p, cfg);
            if (!usable(est)) {
                slots[i].state = est.kink_fallback ? 2 : 0;
                return;
            }
            const double dval = std::fabs(d.value(p.x, p.y));
            slots[i].state = 1;
            slots[i].value = est.value;
            slots[i].margin = est.value + cfg.tol_sign * (1.0 + dval);
        } catch (const DomainError&) {
            slots[i].state = 0;
        }
    });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Slot& s = slots[i];
        if (s.state != 1) {
            ++res.skips;
            if (s.state == 2) {
                ++res.kinks;
                if (res.kink_points.size() < 32) res.kink_points.push_back(grid[i]);
            }
            continue;
        }
        ++res.checked;
        if (s.value < res.min_value) {
            res.min_value = s.value;
            res.argmin = grid[i];
        }
        res.min_margin = std::min(res.min_margin, s.margin);
    }

    // shrink the diagonal band and record how close the estimates stay sane
    res.smallest_band = cfg.diag_band;
    for (double t : {0.0, 1.0, -2.0}) {
        for (int j = 0; j <= 4; ++j) {
            const double delta = cfg.diag_band * std::ldexp(1.0, -j);
            const Point p{t + delta * (1.0 + std::fabs(t)), t};
            if (exclude_lambda_band &&
                d.lambda.gap(p.x, p.y) < cfg.lambda_band * local_scale(p))
                continue;
            try {
                DerivativeEstimate est = cross_partial(d, p, cfg);
                if (!usable(est)) break;
                res.smallest_band = std::min(res.smallest_band, delta);
                res.min_margin = std::min(
                    res.min_margin, est.value + cfg.tol_sign * (1.0 + std::fabs(d.value(p.x, p.y))));
                if (est.value < res.min_value) {
                    res.min_value = est.value;
                    res.argmin = p;
                }
            } catch (const DomainError&) {
                break;
            }
        }
    }

    if (res.checked == 0 || res.skips > 0.05 * (res.checked + res.skips)) {
        res.outcome = CheckOutcome::Unclear;
    } else if (res.min_margin < 0.0) {
        res.outcome = CheckOutcome::Fail;
    } else {
        res.outcome = CheckOutcome::Pass;
    }
    return res;
}

H4AResult check_H4A(const MetricCandidate& d, const CheckConfig& cfg) {
    H4AResult res;
    std::vector<double> base = axis_magnitudes(cfg);
    int failures = 0, unclear = 0;
    for (double a : cfg.profile_probes) {
        ++res.probes;
        std::vector<double> ts = base;
        for (int k = -8; k <= 8; ++k) ts.push_back(a + 0.35 * k);
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

        std::vector<std::pair<double, double>> left, right;  // (t, d(t,a))
        bool domain_trouble = false;
        for (double t : ts) {
            if (std::fabs(t - a) < cfg.diag_band * (1.0 + std::fabs(t) + std::fabs(a))) continue;
            try {
                const double v = d.value(t, a);
                (t < a ? left : right).emplace_back(t, v);
            } catch (const DomainError&) {
                domain_trouble = true;
            }
        }
        if (domain_trouble && left.size() + right.size() < 8) {
            ++unclear;
            continue;
        }
        auto scan = [&](const std::vector<std::pair<double, double>>& side, bool decreasing) {
            for (std::size_t i = 0; i + 1 < side.size(); ++i) {
                const double v1 = side[i].second;
                const double v2 = side[i + 1].second;
                const double tol = cfg.tol_sign * (1.0 + std::fabs(v1));
                const bool bad = decreasing ? v2 > v1 + tol : v2 < v1 - tol;
                if (bad) {
                    if (failures == 0) {
                        res.a = a;
                        res.t1 = side[i].first;
                        res.t2 = side[i + 1].first;
                        res.d1 = v1;
                        res.d2 = v2;
                    }
                    ++failures;
                    return;
                }
            }
        };
        scan(left, /*decreasing=*/true);    // towards a from the left: non-increasing
        scan(right, /*decreasing=*/false);  // away from a on the right: non-decreasing
    }
    if (failures > 0) res.outcome = CheckOutcome::Fail;
    else if (unclear > 0) res.outcome = CheckOutcome::Unclear;
    else res.outcome = CheckOutcome::Pass;
    return res;
}

LimitEstimate estimate_limit(const std::function<double(double)>& f, int direction,
                             const CheckConfig& cfg) {
    LimitEstimate le;
    le.direction = direction;
    le.magnitudes_used = cfg.limit_magnitudes;
    le.cauchy_residual = std::numeric_limits<double>::infinity();

    std::vector<double> v;
    for (double m : cfg.limit_magnitudes) {
        try {
            const double val = f(direction * m);
            if (!std::isfinite(val)) {
                le.status = LimitEstimate::Status::Diverging;
                return le;
            }
            v.push_back(val);
        } catch (const DomainError&) {
            le.status = LimitEstimate::Status::Oscillating;
            return le;
        }
    }
    if (v.size() < 2) {
        le.status = LimitEstimate::Status::Oscillating;
        return le;
    }
    le.value = v.back();

    bool moduli_growing = true;
    bool diffs_growing = true;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (std::fabs(v[i + 1]) <= std::fabs(v[i])) moduli_growing = false;
    for (std::size_t i = 0; i + 2 < v.size(); ++i)
        if (std::fabs(v[i + 2] - v[i + 1]) < std::fabs(v[i + 1] - v[i])) diffs_growing = false;
    const double last_diff = std::fabs(v.back() - v[v.size() - 2]);
    if (moduli_growing && diffs_growing && last_diff > cfg.tol_limit * (1.0 + std::fabs(v.back()))) {
        le.status = LimitEstimate::Status::Diverging;
        le.cauchy_residual = last_diff;
        return le;
    }

    // one Richardson step in 1/lambda sharpens c/lambda tails
    std::vector<double> extr;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double r = cfg.limit_magnitudes[i + 1] / cfg.limit_magnitudes[i];
        extr.push_back((r * v[i + 1] - v[i]) / (r - 1.0));
    }
    double residual;
    if (extr.size() >= 2) {
        le.value = extr.back();
        residual = std::fabs(extr.back() - extr[extr.size() - 2]);
    } else {
        residual = last_diff;
    }
    le.cauchy_residual = residual;
    le.status = residual <= cfg.tol_limit * (1.0 + std::fabs(le.value))
                    ? LimitEstimate::Status::Converged
                    : LimitEstimate::Status::Oscillating;
    return le;
}

H4DResult check_H4D(const MetricCandidate& d, const CheckConfig& cfg) {
    H4DResult res;
    int failures = 0, unclear = 0;
    for (double c : cfg.profile_probes) {
        auto profile = [&](double lam) { return d.value(c, lam); };
        LimitEstimate neg = estimate_limit(profile, -1, cfg);
        LimitEstimate pos = estimate_limit(profile, +1, cfg);
        H4DResult::Row row{c, neg.value, pos.value, false};
        if (neg.status == LimitEstimate::Status::Diverging ||
            pos.status == LimitEstimate::Status::Diverging) {
            ++failures;
        } else if (neg.status != LimitEstimate::Status::Converged ||
                   pos.status != LimitEstimate::Status::Converged) {
            ++unclear;
        } else {
            row.ok = std::fabs(pos.value - neg.value) <=
                     cfg.tol_limit * (1.0 + std::fabs(pos.value));
            if (!row.ok) ++failures;
        }
        res.rows.push_back(row);
    }
    if (failures > 0) res.outcome = CheckOutcome::Fail;
    else if (unclear > 0) res.outcome = CheckOutcome::Unclear;
    else res.outcome = CheckOutcome::Pass;
    return res;
}

H4BResult check_H4B(const MetricCandidate& d, const CheckConfig& cfg) {
    H4BResult res;
    std::vector<std::pair<double, double>> pairs = {{0.0, 1.0}, {-1.0, 1.0}, {1.0, 2.0},
                                                    {-2.0, 0.0}, {0.5, 2.5}, {-5.0, -1.0}};
    std::vector<double> sorted_probes = cfg.profile_probes;
    std::sort(sorted_probes.begin(), sorted_probes.end());
    for (std::size_t i = 0; i + 1 < sorted_probes.size(); ++i)
        pairs.emplace_back(sorted_probes[i], sorted_probes[i + 1]);

    int failures = 0, unclear = 0;
    for (const auto& [a, b] : pairs) {
        if (!(a < b)) continue;
        auto diff = [&](double lam) { return d.value(b, lam) - d.value(a, lam); };
        LimitEstimate pos = estimate_limit(diff, +1, cfg);
        LimitEstimate neg = estimate_limit(diff, -1, cfg);
        H4BResult::Row row{a, b, pos.value, neg.value, false};
        if (pos.status != LimitEstimate::Status::Converged ||
            neg.status != LimitEstimate::Status::Converged) {
            ++unclear;
        } else {
            row.ok = pos.value <= neg.value + cfg.tol_limit * (1.0 + std::fabs(neg.value));
            if (!row.ok) ++failures;
        }
        res.rows.push_back(row);
    }
    if (failures > 0) res.outcome = CheckOutcome::Fail;
    else if (unclear > 0) res.outcome = CheckOutcome::Unclear;
    else res.outcome = CheckOutcome::Pass;
    return res;
}

H4CResult check_H4C(const MetricCandidate& d, const CheckConfig& cfg) {
    H4CResult res;
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    int unclear = 0;
    for (double R : cfg.grad_radii) {
        double worst = 0.0;
        int used = 0;
        for (double m : {R, 1.5 * R, 2.0 * R}) {
            const Point ring[] = {{m, 0.0},      {0.0, m},      {-m, 0.0},     {0.0, -m},
                                  {m, 0.5 * m},  {0.5 * m, m},  {-m, -0.5 * m}, {-0.5 * m, -m},
                                  {m, -m},       {-m, m},       {m, -0.5 * m},  {-0.5 * m, m}};
            for (const Point& p : ring) {
                const double scale = local_scale(p);
                if (diag_gap(p) < cfg.diag_band * scale) continue;
                if (d.lambda.gap(p.x, p.y) < cfg.lambda_band * scale) continue;
                try {
                    GradientEstimate g = gradient(d, p, cfg);
                    if (!usable(g.d1) || !usable(g.d2)) continue;
                    worst = std::max(worst, g.norm);
                    ++used;
                } catch (const DomainError&) {
                }
            }
        }
        if (used == 0) {
            ++unclear;
            continue;
        }
        res.rows.push_back({R, worst});
        if (worst > prev * (1.0 + 1e-9)) monotone = false;
        prev = worst;
    }
    if (res.rows.empty() || unclear > 0) {
        res.outcome = CheckOutcome::Unclear;
    } else if (monotone && res.rows.back().max_norm <= cfg.tol_grad) {
        res.outcome = CheckOutcome::Pass;
    } else {
        res.outcome = CheckOutcome::Fail;
    }
    return res;
}

std::optional<Reparametrization> choose_reparametrization(const MetricCandidate& d,
                                                          const CheckConfig& cfg,
                                                          const std::vector<Point>& extra_probes) {
    std::vector<Point> probes = d.lambda.probes();
    for (const Point& p : extra_probes) {
        probes.push_back(p);
        if (probes.size() >= 48) break;
    }
    if (probes.empty()) return std::nullopt;

    for (int n = 1; n <= cfg.max_n; ++n) {
        MetricCandidate trial = d.with_reparam(n);
        bool clean = true;
        for (const Point& q : probes) {
            if (diag_gap(q) == 0.0) continue;
            if (!smooth_at(trial, q, cfg)) {
                clean = false;
                break;
            }
        }
        if (!clean) continue;
        std::string why = "smallest odd power with kink-free probes";
        if (d.min_exponent) {
            int arith = 0;
            while ((2 * arith + 1) * *d.min_exponent <= 2.0) ++arith;
            why += fmt("; smallest n with (2n+1)p>2 at p=%g is %g", *d.min_exponent,
                       static_cast<double>(arith));
        }
        return Reparametrization{n, why};
    }
    return std::nullopt;
}

double g_horizontal(const MetricCandidate& d, double y, double z, double lambda,
                    const CheckConfig& cfg) {
    if (!(y < z)) throw DomainError("segment endpoints must satisfy y < z");
    if (lambda > y && lambda < z) throw DomainError("segment crosses the diagonal");
    const double eps = 1e-9 * (1.0 + std::fabs(y) + std::fabs(z) + std::fabs(lambda));
    const double a = lambda == y ? y + eps : y;
    const double b = lambda == z ? z - eps : z;
    auto integrand = [&](double s) {
        DerivativeEstimate fp = first_partial(d, {s, lambda}, 1, cfg);
        if (!usable(fp)) throw DomainError("non-convergent integrand");
        return fp.value;
    };
    return integrate_adaptive(integrand, a, b, 1e-8);
}

double g_vertical(const MetricCandidate& d, double x, double y, double lambda,
                  const CheckConfig& cfg) {
    if (!(x < y)) throw DomainError("segment endpoints must satisfy x < y");
    if (lambda > x && lambda < y) throw DomainError("segment crosses the diagonal");
    const double eps = 1e-9 * (1.0 + std::fabs(x) + std::fabs(y) + std::fabs(lambda));
    const double a = lambda == x ? x + eps : x;
    const double b = lambda == y ? y - eps : y;
    auto integrand = [&](double s) {
        DerivativeEstimate fp = first_partial(d, {lambda, s}, 2, cfg);
        if (!usable(fp)) throw DomainError("non-convergent integrand");
        return fp.value;
    };
    return integrate_adaptive(integrand, a, b, 1e-8);
}

GMonotonicityDiagnostic check_G_monotonicity(const MetricCandidate& d, double x, double y,
                                             double z, const std::vector<double>& lambdas,
                                             const CheckConfig& cfg) {
    (void)x;
    GMonotonicityDiagnostic diag;
    std::vector<double> left, right;
    for (double lam : lambdas) {
        if (lam <= y) left.push_back(lam);
        else if (lam >= z) right.push_back(lam);
    }
    auto run = [&](std::vector<double>& side) {
        std::sort(side.begin(), side.end());
        double prev_g = 0.0;
        bool have = false;
        double prev_lam = 0.0;
        for (double lam : side) {
            const double g = g_horizontal(d, y, z, lam, cfg);
            ++diag.evaluated;
            if (have && g < prev_g - 1e-6 * (1.0 + std::fabs(prev_g)))
                diag.inversions.push_back({prev_lam, lam, prev_g, g});
            prev_g = g;
            prev_lam = lam;
            have = true;
        }
    };
    run(left);
    run(right);
    return diag;
}

namespace {

void push_h3_evidence(std::vector<EvidenceSection>& out, const char* name, const H3Result& h3) {
    out.push_back({name,
                   {{"checked", {static_cast<double>(h3.checked)}},
                    {"skips", {static_cast<double>(h3.skips)}},
                    {"kinks", {static_cast<double>(h3.kinks)}},
                    {"min_cross_partial", {h3.min_value}},
                    {"argmin", {h3.argmin.x, h3.argmin.y}},
                    {"diag_band", {h3.band}},
                    {"smallest_band_probed", {h3.smallest_band}}}});
}

} // namespace

Verdict certify(const MetricCandidate& d, const CheckConfig& cfg) {
    std::vector<std::string> notes;
    std::vector<EvidenceSection> evidence;

    H1Result h1 = check_H1(d, cfg);
    evidence.push_back({"H1",
                        {{"diagonal_probes", {static_cast<double>(h1.diag_probes)}},
                         {"max_abs_on_diagonal", {h1.max_diag}},
                         {"offdiagonal_probes", {static_cast<double>(h1.off_probes)}},
                         {"min_off_diagonal", {h1.min_off}}}});
    if (!h1.pass) {
        if (h1.witness) return Verdict::refuted(*h1.witness);
        return Verdict::inconclusive(
            {fmt("candidate not evaluatable at %g positivity probe(s)", h1.domain_errors)});
    }

    H2Result h2 = check_H2(d, cfg);
    evidence.push_back({"H2",
                        {{"structural_symmetry", {h2.structural ? 1.0 : 0.0}},
                         {"probes", {static_cast<double>(h2.probes)}},
                         {"max_asymmetry", {h2.max_asym}}}});
    if (!h2.pass) return Verdict::refuted(*h2.witness);

    H3Result h3 = check_H3(d, cfg, true);
    push_h3_evidence(evidence, "H3", h3);

    // can the tree be trusted as smooth across its non-smooth set? Probe the
    // declared set, anything the sweep tripped over, and the usual suspects
    // for undeclared kinks (the axes and the anti-diagonal)
    std::vector<Point> probes = d.lambda.probes();
    for (double c : {1.0, -1.0, 2.7, -2.7}) {
        probes.push_back({0.0, c});
        probes.push_back({c, 0.0});
    }
    probes.push_back({1.0, -1.0});
    probes.push_back({-2.5, 2.5});
    for (const Point& q : h3.kink_points) probes.push_back(q);
    bool kinked_off_diag = false;
    for (const Point& q : probes) {
        if (diag_gap(q) == 0.0) continue;
        if (!smooth_at(d, q, cfg)) {
            kinked_off_diag = true;
            break;
        }
    }

    std::optional<Reparametrization> reparam;
    H3Result h3_used = h3;
    if (kinked_off_diag) {
        reparam = choose_reparametrization(d, cfg, probes);
        if (reparam) {
            MetricCandidate smoothed = d.with_reparam(reparam->n, reparam->rationale);
            h3_used = check_H3(smoothed, cfg, false);
            push_h3_evidence(evidence, "H3-reparametrized", h3_used);
        } else {
            notes.push_back(
                "kinks persist off the diagonal under every admissible change of coordinates");
        }
    }

    if (h3_used.outcome == CheckOutcome::Fail) {
        notes.push_back(fmt("cross partial is negative: %.9g at (%.9g, %.9g)",
                            h3_used.min_value, h3_used.argmin.x, h3_used.argmin.y));
        // localize the sign failure: the segment integral across the bad
        // point should stop being monotone in the offset
        const double lo = std::min(h3_used.argmin.x, h3_used.argmin.y);
        const double hi = std::max(h3_used.argmin.x, h3_used.argmin.y);
        if (hi - lo > 4.0 * cfg.order_gap) {
            const double w = hi - lo;
            try {
                auto diagg = check_G_monotonicity(
                    d, lo - w, lo, hi, {lo - 2.0 * w, lo - 1.5 * w, lo - w, lo - 0.5 * w}, cfg);
                if (!diagg.inversions.empty()) {
                    const auto& inv = diagg.inversions.front();
                    notes.push_back(
                        fmt("segment integral over the witness span inverts between "
                            "offsets %.9g and %.9g",
                            inv.lambda1, inv.lambda2));
                }
            } catch (const DomainError&) {
            }
        }
        return Verdict::inconclusive(notes);
    }
    if (h3_used.outcome == CheckOutcome::Unclear) {
        notes.push_back(fmt("sign sweep inconclusive: %g skips of %g points",
                            static_cast<double>(h3_used.skips),
                            static_cast<double>(h3_used.checked + h3_used.skips)));
        return Verdict::inconclusive(notes);
    }
    if (kinked_off_diag && !reparam) {
        notes.push_back("sign hypothesis holds off the non-smooth set, but smoothness across it "
                        "could not be restored");
        return Verdict::inconclusive(notes);
    }

    auto certified = [&](const char* hypothesis) {
        Certificate cert;
        cert.theorem = reparam ? "T-combined" : (std::string("T-") + hypothesis);
        cert.h4_used = hypothesis;
        cert.reparam = reparam;
        cert.evidence = evidence;
        return Verdict::certified(std::move(cert));
    };

    H4AResult h4a = check_H4A(d, cfg);
    evidence.push_back({"H4A",
                        {{"probes", {static_cast<double>(h4a.probes)}},
                         {"pass", {h4a.outcome == CheckOutcome::Pass ? 1.0 : 0.0}}}});
    if (h4a.outcome == CheckOutcome::Pass) return certified("H4A");
    if (h4a.outcome == CheckOutcome::Fail)
        notes.push_back(fmt("profile around a=%.9g rises towards a: d(%.9g,a) then higher",
                            h4a.a, h4a.t1));

    H4DResult h4d = check_H4D(d, cfg);
    {
        EvidenceSection sec{"H4D", {}};
        for (const auto& r : h4d.rows)
            sec.rows.push_back({fmt("c=%.9g", r.c), {r.limit_neg, r.limit_pos}});
        evidence.push_back(std::move(sec));
    }
    if (h4d.outcome == CheckOutcome::Pass) return certified("H4D");

    H4BResult h4b = check_H4B(d, cfg);
    {
        EvidenceSection sec{"H4B", {}};
        for (const auto& r : h4b.rows)
            sec.rows.push_back({fmt("a=%.9g b=%.9g", r.a, r.b), {r.limit_pos, r.limit_neg}});
        evidence.push_back(std::move(sec));
    }
    if (h4b.outcome == CheckOutcome::Pass) return certified("H4B");

    if (!reparam) {  // the change of coordinates can break gradient decay
        H4CResult h4c = check_H4C(d, cfg);
        {
            EvidenceSection sec{"H4C", {}};
            for (const auto& r : h4c.rows)
                sec.rows.push_back({fmt("R=%.9g", r.radius), {r.max_norm}});
            evidence.push_back(std::move(sec));
        }
        if (h4c.outcome == CheckOutcome::Pass) return certified("H4C");
    } else {
        notes.push_back("vanishing-gradient hypothesis skipped under reparametrization");
    }

    notes.push_back("sign hypothesis verified but no boundary hypothesis could be confirmed");
    return Verdict::inconclusive(notes);
}

} // namespace metricline
