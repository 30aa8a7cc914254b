#pragma once

#include "metricline/autodiff.hpp"
#include "metricline/config.hpp"

namespace metricline {

// A point where a one-sided slope exceeds its diagonal bound.
struct FirstOrderWitness {
    Point p;
    int dir = +1;  // which one-sided direction along the second axis
    double slope = 0.0;
    double bound = 0.0;
};

struct DiagonalWitness {
    double x = 0.0;
    double slope2 = 0.0;   // one-sided slope along the second axis at (x,x)
    double slope1 = 0.0;   // same along the first axis
    bool nonpositive = false;  // slope fails to be strictly positive
    bool mismatched = false;   // the two axis slopes disagree
};

struct SecondOrderWitness {
    Point p;
    double lhs = 0.0;  // nested one-sided estimate on the diagonal
    double rhs = 0.0;  // the same at (x,y)
};

struct FirstOrderResult {
    std::vector<FirstOrderWitness> witnesses;
    int points = 0;
    int skips = 0;
};

struct DiagonalResult {
    std::vector<DiagonalWitness> witnesses;
    int points = 0;
    int skips = 0;
};

struct SecondOrderResult {
    std::vector<SecondOrderWitness> witnesses;
    int points = 0;
    int skips = 0;
};

// |one-sided slope at (x,y)| <= |one-sided slope at (y,y)| in both
// directions; every converged exceedance is a witness against metric-hood.
FirstOrderResult check_first_order_bound(const MetricCandidate& d,
                                         const std::vector<Point>& points,
                                         const CheckConfig& cfg);

// Diagonal slopes must be strictly positive and axis-symmetric.
DiagonalResult check_diagonal_positivity(const MetricCandidate& d, const std::vector<double>& xs,
                                         const CheckConfig& cfg);

// Nested one-sided second-order comparison: the diagonal value never
// exceeds the off-diagonal one. Non-convergent nestings are recorded as
// skips, not guessed.
SecondOrderResult check_second_order(const MetricCandidate& d, const std::vector<Point>& points,
                                     const CheckConfig& cfg);

struct NecessaryReport {
    FirstOrderResult first_order;
    DiagonalResult diagonal;
    SecondOrderResult second_order;

    bool refuted() const {
        return !first_order.witnesses.empty() || !diagonal.witnesses.empty() ||
               !second_order.witnesses.empty();
    }
};

NecessaryReport run_necessary_battery(const MetricCandidate& d, const CheckConfig& cfg);

} // namespace metricline
