#pragma once

#include <array>
#include <optional>

#include "metricline/config.hpp"
#include "metricline/verdict.hpp"

namespace metricline {

// One-variable generator for a translation-invariant candidate:
// f on the whole line induces d(x,y) = f(y-x); a half-line g induces
// d(x,y) = g(|y-x|) through its even extension.
struct GeneratorFunction {
    ExprPtr expr;  // in x
    std::string source;
    bool half_line = false;
    std::vector<double> breakpoints;  // kink abscissae of piecewise sources

    double operator()(double t) const {
        if (half_line && t < 0.0) throw DomainError("half-line generator evaluated below 0");
        return eval_x(*expr, t);
    }
};

GeneratorFunction make_generator(const std::string& source, bool half_line);

// Named piecewise fixtures: "exa1" (subadditive on the half line, even
// extension fails) and "exa2" (even and subadditive).
GeneratorFunction generator_fixture(const std::string& name);
bool is_generator_fixture(const std::string& name);

// f(x) = g(|x|) for a half-line generator g.
GeneratorFunction even_extension(const GeneratorFunction& g);

// A pair where f(x+y) exceeds f(x)+f(y).
struct PairViolation {
    double x = 0.0, y = 0.0;
    double lhs = 0.0;  // f(x+y)
    double rhs = 0.0;  // f(x)+f(y)
    double gap = 0.0;  // lhs - rhs
};

struct Grid1D {
    std::vector<double> points;  // sorted ascending
};

// Uniform step 1/steps_per_unit over [lo,hi] (half line: [0,hi]) plus the
// generator's breakpoints and their pairwise sums.
Grid1D subadditive_grid(const GeneratorFunction& f, const CheckConfig& cfg);

// Scan of all grid pairs x >= y (the sum f(x)+f(y) is order-symmetric, so
// this covers every ordered pair); sorted by descending gap.
std::vector<PairViolation> check_subadditive(const GeneratorFunction& f, const Grid1D& grid,
                                             double tol);

struct MonotoneWitness {
    double a = 0.0, b = 0.0;  // a < b but g(a) > g(b)
    double ga = 0.0, gb = 0.0;
};

std::optional<MonotoneWitness> check_nondecreasing(const GeneratorFunction& g, const Grid1D& grid,
                                                   double tol);

// Points {0, -y, x} sorted ascending: with d(a,b) = f(b-a) the pair
// violation re-reads as a triangle violation on this triple.
std::array<double, 3> violation_to_triple(const PairViolation& v);

// d(x,y) = f(y-x) (whole line) or g(|y-x|) (half line).
MetricCandidate induced_candidate(const GeneratorFunction& f);

// Decides the translation-invariant case: certificate via the monotone
// half-line route or the even-extension route, a refutation mapped to a
// triangle witness, or inconclusive.
Verdict classify_translation_invariant(const GeneratorFunction& gen, const CheckConfig& cfg);

} // namespace metricline
