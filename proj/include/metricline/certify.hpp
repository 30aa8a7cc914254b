#pragma once

#include <functional>
#include <optional>

#include "metricline/autodiff.hpp"
#include "metricline/config.hpp"
#include "metricline/verdict.hpp"

namespace metricline {

// Probe lattice off the diagonal and non-smooth bands: tensor of signed
// log-spaced magnitudes plus seeded quasi-random points.
std::vector<Point> build_grid2d(const CheckConfig& cfg, const LambdaSet& lambda,
                                bool exclude_lambda_band = true);

struct H1Result {
    bool pass = false;
    int diag_probes = 0;
    double max_diag = 0.0;
    int off_probes = 0;
    double min_off = 0.0;
    int domain_errors = 0;
    std::optional<Violation> witness;
};

struct H2Result {
    bool pass = false;
    bool structural = false;
    int probes = 0;
    double max_asym = 0.0;
    std::optional<Violation> witness;
};

enum class CheckOutcome { Pass, Fail, Unclear };

struct H3Result {
    CheckOutcome outcome = CheckOutcome::Unclear;
    int checked = 0;
    int skips = 0;
    int kinks = 0;
    double min_value = 0.0;
    double min_margin = 0.0;  // min over points of value + tol(point)
    Point argmin{0.0, 0.0};
    double band = 0.0;           // diagonal band coefficient used
    double smallest_band = 0.0;  // smallest near-diagonal band that still converged
    std::vector<Point> kink_points;
};

struct H4AResult {
    CheckOutcome outcome = CheckOutcome::Unclear;
    int probes = 0;
    // witness: profile around a is not monotone towards a
    double a = 0.0, t1 = 0.0, t2 = 0.0, d1 = 0.0, d2 = 0.0;
};

struct LimitEstimate {
    double value = 0.0;
    int direction = +1;
    std::vector<double> magnitudes_used;
    double cauchy_residual = 0.0;
    enum class Status { Converged, Diverging, Oscillating } status = Status::Oscillating;
};

LimitEstimate estimate_limit(const std::function<double(double)>& f, int direction,
                             const CheckConfig& cfg);

struct H4BResult {
    CheckOutcome outcome = CheckOutcome::Unclear;
    struct Row {
        double a, b, limit_pos, limit_neg;
        bool ok;
    };
    std::vector<Row> rows;
};

struct H4CResult {
    CheckOutcome outcome = CheckOutcome::Unclear;
    struct Row {
        double radius, max_norm;
    };
    std::vector<Row> rows;
};

struct H4DResult {
    CheckOutcome outcome = CheckOutcome::Unclear;
    struct Row {
        double c, limit_neg, limit_pos;
        bool ok;
    };
    std::vector<Row> rows;
};

H1Result check_H1(const MetricCandidate& d, const CheckConfig& cfg);
H2Result check_H2(const MetricCandidate& d, const CheckConfig& cfg);
H3Result check_H3(const MetricCandidate& d, const CheckConfig& cfg, bool exclude_lambda_band);
H4AResult check_H4A(const MetricCandidate& d, const CheckConfig& cfg);
H4BResult check_H4B(const MetricCandidate& d, const CheckConfig& cfg);
H4CResult check_H4C(const MetricCandidate& d, const CheckConfig& cfg);
H4DResult check_H4D(const MetricCandidate& d, const CheckConfig& cfg);

// Smallest n <= max_n such that d composed with h(x)=x^(2n+1) on both
// arguments evaluates kink-free on the non-smooth-set probes (plus any extra
// probe points discovered by the sign sweep).
std::optional<Reparametrization> choose_reparametrization(const MetricCandidate& d,
                                                          const CheckConfig& cfg,
                                                          const std::vector<Point>& extra_probes);

// Segment integrals of the first partials. The segment must not cross the
// diagonal: lambda outside (y,z) resp. (x,y).
double g_horizontal(const MetricCandidate& d, double y, double z, double lambda,
                    const CheckConfig& cfg);
double g_vertical(const MetricCandidate& d, double x, double y, double lambda,
                  const CheckConfig& cfg);

struct GMonotonicityDiagnostic {
    struct Inversion {
        double lambda1, lambda2, g1, g2;
    };
    std::vector<Inversion> inversions;
    int evaluated = 0;
};

// Sampled monotonicity of lambda -> g_horizontal(y,z,lambda) on the legal
// intervals; inversions localize sign failures, they do not certify.
GMonotonicityDiagnostic check_G_monotonicity(const MetricCandidate& d, double x, double y,
                                             double z, const std::vector<double>& lambdas,
                                             const CheckConfig& cfg);

// Full sufficiency pipeline; Refuted only on H1/H2 witnesses, Certified on
// the first boundary hypothesis that verifies, Inconclusive otherwise.
Verdict certify(const MetricCandidate& d, const CheckConfig& cfg);

} // namespace metricline
