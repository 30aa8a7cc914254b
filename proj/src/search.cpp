#include "metricline/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>

#include "metricline/parallel.hpp"

namespace metricline {

const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::Triangle1: return "triangle_1";
        case ViolationKind::Triangle2: return "triangle_2";
        case ViolationKind::Triangle3: return "triangle_3";
        case ViolationKind::Symmetry: return "symmetry";
        case ViolationKind::Positivity: return "positivity";
    }
    return "?";
}

const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Certified: return "certified";
        case VerdictKind::Refuted: return "refuted";
        case VerdictKind::Inconclusive: return "inconclusive";
    }
    return "?";
}

TripleMargin triangle_margin(const MetricCandidate& d, double x, double y, double z) {
    TripleMargin t;
    t.x = x;
    t.y = y;
    t.z = z;
    const double dxy = d.value(x, y);
    const double dyz = d.value(y, z);
    const double dxz = d.value(x, z);
    t.m1 = dxy + dyz - dxz;
    t.m2 = dxz + dyz - dxy;
    t.m3 = dxy + dxz - dyz;
    t.m_min = std::min({t.m1, t.m2, t.m3});
    return t;
}

namespace {

ViolationKind triangle_kind(int index) {
    return index == 1 ? ViolationKind::Triangle1
                      : (index == 2 ? ViolationKind::Triangle2 : ViolationKind::Triangle3);
}

bool violation_order(const Violation& a, const Violation& b) {
    if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    return a.witness < b.witness;
}

} // namespace

std::vector<double> oracle_grid(const CheckConfig& cfg) {
    return axis_magnitudes(cfg);
}

std::vector<Violation> brute_force_oracle(const MetricCandidate& d,
                                          const std::vector<double>& grid_in, double tol) {
    std::vector<double> grid = grid_in;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const std::size_t n = grid.size();

    std::vector<double> dist(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = d.value(grid[i], grid[j]);
    auto at = [&](std::size_t i, std::size_t j) { return dist[i * n + j]; };

    std::vector<Violation> out;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = at(i, i);
        if (std::fabs(v) > tol * (1.0 + std::fabs(grid[i]))) {
            out.push_back({ViolationKind::Positivity, {grid[i], grid[i]}, std::fabs(v),
                           "d(x,x) does not vanish"});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = at(i, j);
            const double w = at(j, i);
            if (v <= tol * (1.0 + std::fabs(grid[i]) + std::fabs(grid[j]))) {
                out.push_back({ViolationKind::Positivity, {grid[i], grid[j]},
                               std::max(0.0, -v), "d(x,y) not positive off the diagonal"});
            }
            if (std::fabs(v - w) > tol * (1.0 + std::fabs(v))) {
                out.push_back({ViolationKind::Symmetry, {grid[i], grid[j]}, std::fabs(v - w),
                               "d(x,y) != d(y,x)"});
            }
        }
    }
    for (std::size_t i = 0; i + 2 < n; ++i) {
        for (std::size_t j = i + 1; j + 1 < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const double dij = at(i, j), djk = at(j, k), dik = at(i, k);
                const double scale = 1.0 + std::fabs(dij) + std::fabs(djk) + std::fabs(dik);
                const double m1 = dij + djk - dik;
                const double m2 = dik + djk - dij;
                const double m3 = dij + dik - djk;
                const double m = std::min({m1, m2, m3});
                if (m < -tol * scale) {
                    const int which = (m == m1 ? 1 : (m == m2 ? 2 : 3));
                    out.push_back({triangle_kind(which), {grid[i], grid[j], grid[k]}, -m,
                                   "triangle inequality fails"});
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), violation_order);
    return out;
}

namespace {

struct Triple {
    double x, y, z;
};

double safe_margin(const MetricCandidate& d, const Triple& t) {
    try {
        return triangle_margin(d, t.x, t.y, t.z).m_min;
    } catch (const DomainError&) {
        return std::numeric_limits<double>::infinity();
    }
}

// Coordinate pattern search with shrinking step; ordering x<y<z is preserved
// by clamping the moved coordinate against its neighbours, and the whole
// triple stays inside the log-symmetric search window.
Triple refine(const MetricCandidate& d, Triple t, const CheckConfig& cfg, double* best_out) {
    double best = safe_margin(d, t);
    const double window = std::pow(10.0, cfg.grid_exp_max);
    const double scale = 1.0 + std::max({std::fabs(t.x), std::fabs(t.y), std::fabs(t.z)});
    double step = cfg.pattern_initial * scale;
    int sweeps = 0;
    while (step > cfg.pattern_stop && sweeps++ < 400) {
        bool improved = false;
        for (int coord = 0; coord < 3; ++coord) {
            for (double dir : {+1.0, -1.0}) {
                Triple c = t;
                double* slot = coord == 0 ? &c.x : (coord == 1 ? &c.y : &c.z);
                *slot += dir * step;
                *slot = std::clamp(*slot, -window, window);
                if (coord == 0) c.x = std::min(c.x, c.y - cfg.order_gap);
                if (coord == 1) c.y = std::min(std::max(c.y, c.x + cfg.order_gap), c.z - cfg.order_gap);
                if (coord == 2) c.z = std::max(c.z, c.y + cfg.order_gap);
                if (!(c.x < c.y && c.y < c.z)) continue;
                const double m = safe_margin(d, c);
                if (m < best) {
                    best = m;
                    t = c;
                    improved = true;
                }
            }
        }
        if (!improved) step *= cfg.pattern_shrink;
    }
    *best_out = best;
    return t;
}

} // namespace

std::optional<Violation> find_counterexample(const MetricCandidate& d, const CheckConfig& cfg) {
    const std::vector<double> grid = oracle_grid(cfg);
    const std::size_t n = grid.size();

    // pair scan first: symmetry and positivity witnesses need no refinement
    std::vector<Violation> pair_violations;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v, w;
            try {
                v = d.value(grid[i], grid[j]);
                w = d.value(grid[j], grid[i]);
            } catch (const DomainError&) {
                continue;
            }
            if (std::fabs(v - w) > cfg.search_tol * (1.0 + std::fabs(v)))
                pair_violations.push_back(
                    {ViolationKind::Symmetry, {grid[i], grid[j]}, std::fabs(v - w), ""});
            if (v <= cfg.search_tol * (1.0 + std::fabs(grid[i]) + std::fabs(grid[j])))
                pair_violations.push_back(
                    {ViolationKind::Positivity, {grid[i], grid[j]}, std::max(0.0, -v), ""});
        }
    }
    for (double t : grid) {
        try {
            double v = d.value(t, t);
            if (std::fabs(v) > cfg.search_tol * (1.0 + std::fabs(t)))
                pair_violations.push_back({ViolationKind::Positivity, {t, t}, std::fabs(v), ""});
        } catch (const DomainError&) {
        }
    }

    // margins of all grid triples; remember everything for the seed decile
    struct Seed {
        Triple t;
        double m;
    };
    std::vector<Seed> all;
    all.reserve(n * n * n / 6);
    for (std::size_t i = 0; i + 2 < n; ++i)
        for (std::size_t j = i + 1; j + 1 < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Triple t{grid[i], grid[j], grid[k]};
                all.push_back({t, safe_margin(d, t)});
            }
    std::sort(all.begin(), all.end(), [](const Seed& a, const Seed& b) {
        if (a.m != b.m) return a.m < b.m;
        return std::tie(a.t.x, a.t.y, a.t.z) < std::tie(b.t.x, b.t.y, b.t.z);
    });

    std::vector<Triple> seeds;
    const std::size_t decile = std::max<std::size_t>(1, all.size() / 10);
    for (std::size_t i = 0; i < std::min(decile, all.size()); ++i) seeds.push_back(all[i].t);

    std::mt19937_64 rng(cfg.rng_seed);
    std::uniform_real_distribution<double> uexp(cfg.grid_exp_min, cfg.grid_exp_max);
    std::uniform_real_distribution<double> usign(0.0, 1.0);
    for (int s = 0; s < cfg.search_random_seeds; ++s) {
        double c[3];
        for (double& v : c) v = (usign(rng) < 0.5 ? -1.0 : 1.0) * std::pow(10.0, uexp(rng));
        std::sort(c, c + 3);
        if (c[1] - c[0] < cfg.order_gap || c[2] - c[1] < cfg.order_gap) continue;
        seeds.push_back({c[0], c[1], c[2]});
    }

    // refine seeds in parallel, reduce deterministically in seed order
    std::vector<Seed> refined(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) {
        double m = 0.0;
        Triple t = refine(d, seeds[i], cfg, &m);
        refined[i] = {t, m};
    });

    double best_m = all.empty() ? std::numeric_limits<double>::infinity() : all.front().m;
    Triple best_t = all.empty() ? Triple{0, 1, 2} : all.front().t;
    for (const Seed& s : refined) {
        if (s.m < best_m ||
            (s.m == best_m && std::tie(s.t.x, s.t.y, s.t.z) < std::tie(best_t.x, best_t.y, best_t.z))) {
            best_m = s.m;
            best_t = s.t;
        }
    }

    std::optional<Violation> deepest;
    if (std::isfinite(best_m)) {
        TripleMargin tm = triangle_margin(d, best_t.x, best_t.y, best_t.z);
        const double scale = 1.0;
        if (tm.m_min < -cfg.search_tol * scale) {
            deepest = Violation{triangle_kind(tm.argmin()), {tm.x, tm.y, tm.z}, -tm.m_min,
                                "refined triangle violation"};
        }
    }
    for (const Violation& v : pair_violations) {
        if (!deepest || violation_order(v, *deepest)) deepest = v;
    }
    return deepest;
}

} // namespace metricline
