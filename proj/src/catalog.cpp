#include "metricline/catalog.hpp"

#include <cmath>
#include <cstdio>

namespace metricline {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

double require_param(const std::map<std::string, double>& params, const std::string& key,
                     double fallback, bool has_fallback) {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    if (has_fallback) return fallback;
    throw CatalogError("missing parameter '" + key + "'");
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<const char*> known) {
    for (const auto& kv : params) {
        bool ok = false;
        for (const char* k : known)
            if (kv.first == k) ok = true;
        if (!ok) throw CatalogError("unknown parameter '" + kv.first + "'");
    }
}

std::string p_relative_source(double p) {
    if (p == 1.0) return "pw(abs(x)+abs(y)==0, 0, abs(y-x)/(abs(x)+abs(y)))";
    return "pw(abs(x)+abs(y)==0, 0, abs(y-x)/(abs(x)^" + num(p) + "+abs(y)^" + num(p) +
           ")^(1/" + num(p) + "))";
}

std::string generalized_chordal_source(double alpha, double beta, double p) {
    if (beta == 0.0) return "abs(y-x)/" + num(std::pow(alpha, 2.0 / p));
    auto factor = [&](const char* v) {
        return "(" + num(alpha) + "+" + num(beta) + "*abs(" + std::string(v) + ")^" + num(p) +
               ")^(1/" + num(p) + ")";
    };
    return "abs(y-x)/(" + factor("x") + "*" + factor("y") + ")";
}

// printed mixed partial of the chordal metric
double chordal_cross(double x, double y) {
    return 2.0 * std::fabs(x - y) /
           (std::pow(1.0 + x * x, 1.5) * std::pow(1.0 + y * y, 1.5));
}

// Mixed partial of the p-relative candidate, derived for first argument >
// second (the mixed partial of a symmetric function is itself symmetric, so
// swap into that half-plane first):
//   [sgn(x)|x|^(2p-1) - sgn(y)|y|^(2p-1) + p*sgn(xy)*(x-y)*|xy|^(p-1)]
//     / (|x|^p + |y|^p)^(2+1/p)
// Note the (x - y) factor: it coincides with |x|-|y| only when both
// arguments are positive. For p > 1 this expression is genuinely negative
// near the ray y = -x, which the sign checks must be allowed to see.
double p_relative_cross(double p, double x, double y) {
    if (x < y) std::swap(x, y);
    const double ax = std::fabs(x), ay = std::fabs(y);
    const double den = std::pow(std::pow(ax, p) + std::pow(ay, p), 2.0 + 1.0 / p);
    const double t1 = sgn(x) * std::pow(ax, 2.0 * p - 1.0) - sgn(y) * std::pow(ay, 2.0 * p - 1.0);
    const double t2 = p * sgn(x * y) * (x - y) * std::pow(ax * ay, p - 1.0);
    return (t1 + t2) / den;
}

// printed mixed partial of the reduced generalized chordal form, carried to
// general alpha, beta by the same cancellation
double generalized_chordal_cross(double alpha, double beta, double p, double x, double y) {
    const double ax = std::fabs(x), ay = std::fabs(y);
    const double t = sgn(y) * std::pow(ay, p - 1.0) - sgn(x) * std::pow(ax, p - 1.0);
    const double den =
        std::pow((alpha + beta * std::pow(ax, p)) * (alpha + beta * std::pow(ay, p)),
                 (p + 1.0) / p);
    return alpha * beta * sgn(y - x) * t / den;
}

void check_concave_generator(const Expr& g) {
    // g(0)=0, g>0 off 0, g'' <= 0 by central second differences on a grid
    const double g0 = eval_x(g, 0.0);
    if (std::fabs(g0) > 1e-12) throw CatalogError("generator must satisfy g(0)=0");
    for (double u = 0.05; u <= 20.0; u *= 1.4) {
        const double h = 1e-4 * (1.0 + u);
        const double gm = eval_x(g, u - h);
        const double gc = eval_x(g, u);
        const double gp = eval_x(g, u + h);
        if (gc <= 0.0) throw CatalogError("generator must be positive for u>0");
        const double second = (gp - 2.0 * gc + gm) / (h * h);
        if (second > 1e-5 * (1.0 + std::fabs(gc)))
            throw CatalogError("generator failed the concavity scan");
        if (gp + 1e-12 < gm) throw CatalogError("generator failed the monotonicity scan");
    }
}

} // namespace

std::vector<CatalogDescriptor> catalog_list() {
    return {
        {"chordal", "(no parameters)", "T-H4D", "2*abs(y-x)/(sqrt(1+x^2)*sqrt(1+y^2))"},
        {"p_relative", "p >= 1", "T-combined", "abs(y-x)/(abs(x)^p+abs(y)^p)^(1/p), 0 at the origin"},
        {"relative", "(no parameters)", "none (pointwise limit of p_relative)",
         "abs(y-x)/max(abs(x),abs(y)), 0 at the origin"},
        {"generalized_chordal", "alpha > 0, beta >= 0, p >= 1", "T-combined",
         "abs(y-x)/((alpha+beta*abs(x)^p)^(1/p)*(alpha+beta*abs(y)^p)^(1/p))"},
        {"concave_ti", "g = one-variable generator expression",
         "T-H4A", "g(abs(y-x)) with g concave, non-decreasing, g(0)=0"},
    };
}

CatalogEntry catalog_get(const std::string& name, const std::map<std::string, double>& params,
                         ExprPtr generator) {
    CatalogEntry entry;
    entry.name = name;

    if (name == "chordal") {
        reject_unknown(params, {});
        entry.d = candidate_from_source("2*abs(y-x)/(sqrt(1+x^2)*sqrt(1+y^2))", "chordal");
        entry.closed_cross = chordal_cross;
        entry.expected_theorem = "T-H4D";
    } else if (name == "p_relative") {
        reject_unknown(params, {"p"});
        const double p = require_param(params, "p", 0, false);
        if (!(p >= 1.0)) throw CatalogError("p_relative requires p >= 1");
        entry.params["p"] = p;
        entry.d = candidate_from_source(p_relative_source(p), "p_relative(p=" + num(p) + ")");
        entry.d.lambda.kind = LambdaKind::AxesZero;
        entry.d.min_exponent = p;
        entry.closed_cross = [p](double x, double y) { return p_relative_cross(p, x, y); };
        // the mixed partial changes sign near y=-x for p>1, so the sign
        // hypothesis certifies only the p=1 member of the family
        entry.expected_theorem =
            p == 1.0 ? "T-combined" : "none (cross partial changes sign for p > 1)";
    } else if (name == "relative") {
        reject_unknown(params, {});
        entry.d = candidate_from_source("pw(abs(x)+abs(y)==0, 0, abs(y-x)/max(abs(x),abs(y)))",
                                        "relative");
        entry.d.lambda.kind = LambdaKind::AxesZeroOrEqualAbs;
        entry.expected_theorem = "none (pointwise limit of p_relative)";
    } else if (name == "generalized_chordal") {
        reject_unknown(params, {"alpha", "beta", "p"});
        const double alpha = require_param(params, "alpha", 1.0, true);
        const double beta = require_param(params, "beta", 1.0, true);
        const double p = require_param(params, "p", 1.0, true);
        if (!(alpha > 0.0)) throw CatalogError("generalized_chordal requires alpha > 0");
        if (!(beta >= 0.0)) throw CatalogError("generalized_chordal requires beta >= 0");
        if (!(p >= 1.0)) throw CatalogError("generalized_chordal requires p >= 1");
        entry.params = {{"alpha", alpha}, {"beta", beta}, {"p", p}};
        entry.d = candidate_from_source(
            generalized_chordal_source(alpha, beta, p),
            "generalized_chordal(alpha=" + num(alpha) + ",beta=" + num(beta) + ",p=" + num(p) + ")");
        if (beta > 0.0) {
            entry.d.lambda.kind = LambdaKind::AxesZero;
            entry.d.min_exponent = p;
            entry.closed_cross = [alpha, beta, p](double x, double y) {
                return generalized_chordal_cross(alpha, beta, p, x, y);
            };
            entry.expected_theorem = "T-combined";
        } else {
            entry.expected_theorem = "T-H4A";
        }
    } else if (name == "concave_ti") {
        reject_unknown(params, {});
        if (!generator) throw CatalogError("concave_ti requires a generator expression");
        if (!free_vars(*generator).empty() && free_vars(*generator) != std::set<std::string>{"x"})
            throw CatalogError("generator must be a one-variable expression in x");
        check_concave_generator(*generator);
        ExprPtr dist = substitute(generator, "x", parse("abs(y-x)", {"x", "y"}));
        entry.d.expr = dist;
        entry.d.source = pretty_print(*dist);
        entry.d.label = "concave_ti(g=" + pretty_print(*generator) + ")";
        entry.expected_theorem = "T-H4A";
    } else {
        throw CatalogError("unknown catalog entry '" + name + "'");
    }
    entry.nonsmooth = entry.d.lambda.describe();
    return entry;
}

double closed_form_cross_partial(const CatalogEntry& entry, Point p) {
    if (!entry.closed_cross)
        throw CatalogError("entry '" + entry.name + "' has no printed cross-partial formula");
    if (p.x == p.y) throw CatalogError("cross-partial formula is undefined on the diagonal");
    if (entry.d.lambda.gap(p.x, p.y) == 0.0)
        throw CatalogError("cross-partial formula is undefined on the non-smooth set");
    return entry.closed_cross(p.x, p.y);
}

GeneralizedChordalReduction reduce_generalized_chordal(double alpha, double beta, double p) {
    if (!(alpha > 0.0)) throw CatalogError("requires alpha > 0");
    if (!(beta >= 0.0)) throw CatalogError("requires beta >= 0");
    if (!(p >= 1.0)) throw CatalogError("requires p >= 1");

    GeneralizedChordalReduction red;
    if (beta == 0.0) {
        // the variable part of the denominators vanishes; translation
        // invariant scaled absolute difference
        red.degenerate = true;
        red.scaling = std::pow(alpha, -2.0 / p);
        red.g_coeff = 1.0;
        red.reduced = candidate_from_source("abs(y-x)", "abs-difference");
        return red;
    }
    red.scaling = std::pow(alpha * beta, -1.0 / p);
    red.g_coeff = std::pow(beta / alpha, 1.0 / p);
    red.reduced = catalog_get("generalized_chordal", {{"alpha", 1.0}, {"beta", 1.0}, {"p", p}}).d;
    red.reduced.label = "generalized_chordal_reduced(p=" + num(p) + ")";
    return red;
}

} // namespace metricline
