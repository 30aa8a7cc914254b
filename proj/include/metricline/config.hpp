#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace metricline {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Every tolerance and probe set used by the checks. Defaults are the
// shipped configuration; a flat key=value file can override any field.
struct CheckConfig {
    // 2-d probe grid: {0} u {±10^t} axis magnitudes, tensored, plus seeded
    // quasi-random points, minus bands around the diagonal and the
    // candidate's non-smooth set.
    double grid_exp_min = -2.0;
    double grid_exp_max = 3.0;
    double grid_exp_step = 0.5;
    int quasi_random_points = 2000;
    double diag_band = 1e-3;    // exclude |x-y| <  diag_band*(1+|x|+|y|)
    double lambda_band = 1e-3;  // exclude dist-to-Lambda < lambda_band*(1+|x|+|y|)

    // sign / symmetry / positivity tolerances
    double tol_sign = 1e-9;
    double tol_sym = 1e-9;
    double tol_pos = 1e-9;

    // limits at infinity
    std::vector<double> limit_magnitudes = {1e3, 1e4, 1e5, 1e6};
    double tol_limit = 1e-6;

    // vanishing-gradient check
    std::vector<double> grad_radii = {1e2, 1e3, 1e4};
    double tol_grad = 1e-3;

    // finite-difference ladder h_k = scale*2^-k with one Richardson level
    int fd_k0 = 8;
    int fd_k1 = 28;
    double tol_fd = 1e-7;
    double kink_tol = 1e-12;  // scaled by max(1,|x|,|y|) at the probe point

    // refutation-battery tolerances (second order is noisier)
    double tol_nec = 1e-5;
    double tol_nec2 = 1e-3;

    // generator pair scan
    double sub_lo = -5.0;
    double sub_hi = 5.0;
    int sub_steps_per_unit = 300;
    double sub_tol = 1e-12;

    // counterexample search
    double search_tol = 1e-12;
    double pattern_initial = 0.25;  // times local scale
    double pattern_shrink = 0.5;
    double pattern_stop = 1e-9;
    double order_gap = 1e-6;
    int search_random_seeds = 64;

    std::uint64_t rng_seed = 42;
    int max_n = 3;  // reparametrization exponent cap, h(x)=x^(2n+1)

    // one-dimensional profile probes (monotone scans, limit checks)
    std::vector<double> profile_probes = {0.0, 1.0, -1.0, 2.0, -2.0, 5.0, -5.0};
};

// key=value per line, '#' comments. Unknown keys are an error.
CheckConfig load_config_file(const std::string& path);
void apply_config_line(CheckConfig& cfg, const std::string& line);

// Ordered (key, printed value) pairs for the report echo.
std::vector<std::pair<std::string, std::string>> config_entries(const CheckConfig& cfg);

// {0, ±10^t : t = grid_exp_min .. grid_exp_max step grid_exp_step}, sorted.
std::vector<double> axis_magnitudes(const CheckConfig& cfg);

// Deterministic low-discrepancy points in [0,1)^2 (additive recurrence),
// offset by the seed.
std::vector<Point> quasi_random_unit(int count, std::uint64_t seed);

double diag_gap(const Point& p);  // |x - y|
double local_scale(const Point& p);  // 1 + |x| + |y|

} // namespace metricline
