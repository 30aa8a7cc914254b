#include "metricline/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace metricline {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::string print_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string print_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += print_num(v[i]);
    }
    return out;
}

} // namespace

void apply_config_line(CheckConfig& cfg, const std::string& raw) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') return;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
        throw std::runtime_error("config line is not key=value: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));

    auto num = [&] { return std::stod(val); };
    auto integer = [&] { return std::stoi(val); };

    if (key == "grid_exp_min") cfg.grid_exp_min = num();
    else if (key == "grid_exp_max") cfg.grid_exp_max = num();
    else if (key == "grid_exp_step") cfg.grid_exp_step = num();
    else if (key == "quasi_random_points") cfg.quasi_random_points = integer();
    else if (key == "diag_band") cfg.diag_band = num();
    else if (key == "lambda_band") cfg.lambda_band = num();
    else if (key == "tol_sign") cfg.tol_sign = num();
    else if (key == "tol_sym") cfg.tol_sym = num();
    else if (key == "tol_pos") cfg.tol_pos = num();
    else if (key == "limit_magnitudes") cfg.limit_magnitudes = parse_list(val);
    else if (key == "tol_limit") cfg.tol_limit = num();
    else if (key == "grad_radii") cfg.grad_radii = parse_list(val);
    else if (key == "tol_grad") cfg.tol_grad = num();
    else if (key == "fd_k0") cfg.fd_k0 = integer();
    else if (key == "fd_k1") cfg.fd_k1 = integer();
    else if (key == "tol_fd") cfg.tol_fd = num();
    else if (key == "kink_tol") cfg.kink_tol = num();
    else if (key == "tol_nec") cfg.tol_nec = num();
    else if (key == "tol_nec2") cfg.tol_nec2 = num();
    else if (key == "sub_lo") cfg.sub_lo = num();
    else if (key == "sub_hi") cfg.sub_hi = num();
    else if (key == "sub_steps_per_unit") cfg.sub_steps_per_unit = integer();
    else if (key == "sub_tol") cfg.sub_tol = num();
    else if (key == "search_tol") cfg.search_tol = num();
    else if (key == "pattern_initial") cfg.pattern_initial = num();
    else if (key == "pattern_shrink") cfg.pattern_shrink = num();
    else if (key == "pattern_stop") cfg.pattern_stop = num();
    else if (key == "order_gap") cfg.order_gap = num();
    else if (key == "search_random_seeds") cfg.search_random_seeds = integer();
    else if (key == "rng_seed") cfg.rng_seed = std::stoull(val);
    else if (key == "max_n") cfg.max_n = integer();
    else if (key == "profile_probes") cfg.profile_probes = parse_list(val);
    else throw std::runtime_error("unknown config key: " + key);
}

CheckConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    CheckConfig cfg;
    std::string line;
    while (std::getline(in, line)) apply_config_line(cfg, line);
    return cfg;
}

std::vector<std::pair<std::string, std::string>> config_entries(const CheckConfig& c) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("grid_exp_min", print_num(c.grid_exp_min));
    out.emplace_back("grid_exp_max", print_num(c.grid_exp_max));
    out.emplace_back("grid_exp_step", print_num(c.grid_exp_step));
    out.emplace_back("quasi_random_points", std::to_string(c.quasi_random_points));
    out.emplace_back("diag_band", print_num(c.diag_band));
    out.emplace_back("lambda_band", print_num(c.lambda_band));
    out.emplace_back("tol_sign", print_num(c.tol_sign));
    out.emplace_back("tol_sym", print_num(c.tol_sym));
    out.emplace_back("tol_pos", print_num(c.tol_pos));
    out.emplace_back("limit_magnitudes", print_list(c.limit_magnitudes));
    out.emplace_back("tol_limit", print_num(c.tol_limit));
    out.emplace_back("grad_radii", print_list(c.grad_radii));
    out.emplace_back("tol_grad", print_num(c.tol_grad));
    out.emplace_back("fd_k0", std::to_string(c.fd_k0));
    out.emplace_back("fd_k1", std::to_string(c.fd_k1));
    out.emplace_back("tol_fd", print_num(c.tol_fd));
    out.emplace_back("kink_tol", print_num(c.kink_tol));
    out.emplace_back("tol_nec", print_num(c.tol_nec));
    out.emplace_back("tol_nec2", print_num(c.tol_nec2));
    out.emplace_back("sub_lo", print_num(c.sub_lo));
    out.emplace_back("sub_hi", print_num(c.sub_hi));
    out.emplace_back("sub_steps_per_unit", std::to_string(c.sub_steps_per_unit));
    out.emplace_back("sub_tol", print_num(c.sub_tol));
    out.emplace_back("search_tol", print_num(c.search_tol));
    out.emplace_back("pattern_initial", print_num(c.pattern_initial));
    out.emplace_back("pattern_shrink", print_num(c.pattern_shrink));
    out.emplace_back("pattern_stop", print_num(c.pattern_stop));
    out.emplace_back("order_gap", print_num(c.order_gap));
    out.emplace_back("search_random_seeds", std::to_string(c.search_random_seeds));
    out.emplace_back("rng_seed", std::to_string(c.rng_seed));
    out.emplace_back("max_n", std::to_string(c.max_n));
    out.emplace_back("profile_probes", print_list(c.profile_probes));
    return out;
}

std::vector<double> axis_magnitudes(const CheckConfig& cfg) {
    std::vector<double> out;
    out.push_back(0.0);
    for (double t = cfg.grid_exp_min; t <= cfg.grid_exp_max + 1e-12; t += cfg.grid_exp_step) {
        double m = std::pow(10.0, t);
        out.push_back(m);
        out.push_back(-m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Point> quasi_random_unit(int count, std::uint64_t seed) {
    // 2-d additive recurrence with the plastic-number fractions; the seed
    // only shifts the start index, so identical seeds reproduce exactly.
    constexpr double a1 = 0.7548776662466927;
    constexpr double a2 = 0.5698402909980532;
    const double start = static_cast<double>(seed % 100003u);
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double n = start + static_cast<double>(i + 1);
        double u = std::fmod(0.5 + n * a1, 1.0);
        double v = std::fmod(0.5 + n * a2, 1.0);
        pts.push_back({u, v});
    }
    return pts;
}

double diag_gap(const Point& p) { return std::fabs(p.x - p.y); }

double local_scale(const Point& p) { return 1.0 + std::fabs(p.x) + std::fabs(p.y); }

} // namespace metricline
