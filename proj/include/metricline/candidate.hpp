#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "metricline/config.hpp"
#include "metricline/expr.hpp"

namespace metricline {

// Known non-smooth set of a candidate away from the diagonal. Drives band
// exclusion in probe grids and supplies on-set probe points for the kink
// diagnostics.
enum class LambdaKind {
    None,
    AxesZero,           // { (x,y) : x*y = 0 }
    AxesZeroOrEqualAbs  // { x*y = 0 } u { |x| = |y| }
};

struct LambdaSet {
    LambdaKind kind = LambdaKind::None;

    std::string describe() const {
        switch (kind) {
            case LambdaKind::None: return "none";
            case LambdaKind::AxesZero: return "x*y=0";
            case LambdaKind::AxesZeroOrEqualAbs: return "x*y=0 or |x|=|y|";
        }
        return "none";
    }

    // Distance proxy to the set; +inf when empty.
    double gap(double x, double y) const {
        switch (kind) {
            case LambdaKind::None:
                return std::numeric_limits<double>::infinity();
            case LambdaKind::AxesZero:
                return std::min(std::fabs(x), std::fabs(y));
            case LambdaKind::AxesZeroOrEqualAbs:
                return std::min(std::min(std::fabs(x), std::fabs(y)),
                                std::fabs(std::fabs(x) - std::fabs(y)));
        }
        return std::numeric_limits<double>::infinity();
    }

    // Representative points on the set but off the diagonal.
    std::vector<Point> probes() const {
        std::vector<Point> pts;
        auto axes = [&pts](double c) {
            pts.push_back({0.0, c});
            pts.push_back({c, 0.0});
            pts.push_back({0.0, -c});
            pts.push_back({-c, 0.0});
        };
        switch (kind) {
            case LambdaKind::None:
                break;
            case LambdaKind::AxesZero:
                for (double c : {1.0, 2.7, 10.0}) axes(c);
                break;
            case LambdaKind::AxesZeroOrEqualAbs:
                for (double c : {1.0, 2.7, 10.0}) {
                    axes(c);
                    pts.push_back({c, -c});
                    pts.push_back({-c, c});
                }
                break;
        }
        return pts;
    }
};

// Odd-power change of coordinates h(x) = x^(2n+1), a strictly increasing
// bijection of the line with h(0)=0.
struct Reparametrization {
    int n = 1;
    std::string rationale;

    long exponent() const { return 2L * n + 1L; }
    double h(double t) const {
        double r = t;
        for (long i = 1; i < exponent(); ++i) r *= t;
        return r;
    }
};

// A two-variable candidate distance d(x,y) with its known non-smooth set
// and an optional change of coordinates applied to both arguments.
struct MetricCandidate {
    ExprPtr expr;             // free vars within {x, y}
    std::string label;
    std::string source;       // DSL text the expression came from
    LambdaSet lambda;
    std::optional<Reparametrization> reparam;
    std::optional<double> min_exponent;  // smallest |.|^p power, when known

    template <class S>
    S operator()(S x, S y, const EvalSettings& st = {}, EvalDiag* diag = nullptr) const {
        if (reparam) {
            x = detail::pow_int(x, reparam->exponent());
            y = detail::pow_int(y, reparam->exponent());
        }
        EvalEnv<S> env;
        env.bind("x", std::move(x));
        env.bind("y", std::move(y));
        return eval(*expr, env, st, diag);
    }

    double value(double x, double y) const { return (*this)(x, y); }

    // Same candidate with h(x)=x^(2n+1) composed onto both arguments.
    MetricCandidate with_reparam(int n, std::string rationale = {}) const {
        MetricCandidate out = *this;
        if (n <= 0) {
            out.reparam.reset();
        } else {
            out.reparam = Reparametrization{n, std::move(rationale)};
            out.label = label + " \xE2\x88\x98 (h x h), h=x^" + std::to_string(2 * n + 1);
        }
        return out;
    }
};

// Parses a two-variable DSL source into a candidate with no declared
// non-smooth set.
MetricCandidate candidate_from_source(const std::string& source, std::string label = {});

} // namespace metricline
