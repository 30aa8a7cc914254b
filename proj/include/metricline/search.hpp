#pragma once

#include <optional>

#include "metricline/config.hpp"
#include "metricline/verdict.hpp"

namespace metricline {

// Margins of the three triangle inequalities on an ordered triple x<y<z.
// A metric keeps all of them non-negative.
struct TripleMargin {
    double x = 0.0, y = 0.0, z = 0.0;
    double m1 = 0.0;  // d(x,y)+d(y,z)-d(x,z)
    double m2 = 0.0;  // d(x,z)+d(y,z)-d(x,y)
    double m3 = 0.0;  // d(x,y)+d(x,z)-d(y,z)
    double m_min = 0.0;

    int argmin() const { return m1 <= m2 && m1 <= m3 ? 1 : (m2 <= m3 ? 2 : 3); }
};

TripleMargin triangle_margin(const MetricCandidate& d, double x, double y, double z);

// Exhaustive scan of a finite grid: every ordered triple for the triangle
// inequalities, every pair for symmetry and positivity, the diagonal for
// vanishing. Deterministic order, violations sorted deepest first.
std::vector<Violation> brute_force_oracle(const MetricCandidate& d,
                                          const std::vector<double>& grid,
                                          double tol = 1e-12);

// Default 1-d grid for the oracle: signed log-spaced magnitudes.
std::vector<double> oracle_grid(const CheckConfig& cfg);

// Grid seeding plus derivative-free coordinate pattern search on the
// ordered-triple domain; returns the deepest violation found, if any.
std::optional<Violation> find_counterexample(const MetricCandidate& d, const CheckConfig& cfg);

} // namespace metricline
