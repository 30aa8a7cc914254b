#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "metricline/search.hpp"
#include "metricline/subadditive.hpp"

using namespace metricline;

namespace {
const CheckConfig cfg;

bool contains_pair(const std::vector<PairViolation>& vs, double x, double y) {
    for (const auto& v : vs)
        if (v.x == x && v.y == y) return true;
    return false;
}
} // namespace

TEST_CASE("fixture values") {
    GeneratorFunction f = generator_fixture("exa1");
    CHECK(f(0.0) == 0.0);
    CHECK(f(1.0) == doctest::Approx(1.0));
    CHECK(f(3.0) == doctest::Approx(1.0 / 3.0));
    CHECK(f(-2.0) == doctest::Approx(1.0 / 3.0));

    GeneratorFunction g = generator_fixture("exa2");
    CHECK(g(4.0 / 3.0) == doctest::Approx(2.0 / 3.0));
    CHECK(g(-1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(generator_fixture("exa3"), DomainError);
}

TEST_CASE("pair scan pins the known violation on a minimal grid") {
    GeneratorFunction f = generator_fixture("exa1");
    Grid1D grid{{-2.0, 1.0, 3.0}};
    auto vs = check_subadditive(f, grid, cfg.sub_tol);
    REQUIRE(vs.size() >= 1);
    CHECK(vs.front().x == 3.0);
    CHECK(vs.front().y == -2.0);
    CHECK(vs.front().lhs == doctest::Approx(1.0));
    CHECK(vs.front().rhs == doctest::Approx(2.0 / 3.0));
    CHECK(vs.front().gap == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("default grid: first fixture violates, second is clean") {
    GeneratorFunction f1 = generator_fixture("exa1");
    Grid1D g1 = subadditive_grid(f1, cfg);
    // breakpoints and the exact integer abscissae are on the grid
    CHECK(std::count(g1.points.begin(), g1.points.end(), 3.0) == 1);
    CHECK(std::count(g1.points.begin(), g1.points.end(), -2.0) == 1);
    CHECK(std::count(g1.points.begin(), g1.points.end(), 5.0 / 3.0) == 1);
    auto vs1 = check_subadditive(f1, g1, cfg.sub_tol);
    CHECK(!vs1.empty());
    CHECK(contains_pair(vs1, 3.0, -2.0));

    GeneratorFunction f2 = generator_fixture("exa2");
    auto vs2 = check_subadditive(f2, subadditive_grid(f2, cfg), cfg.sub_tol);
    CHECK(vs2.empty());

    GeneratorFunction absf = make_generator("abs(x)", false);
    CHECK(check_subadditive(absf, subadditive_grid(absf, cfg), cfg.sub_tol).empty());
}

TEST_CASE("violations re-evaluate to their stated gap") {
    GeneratorFunction f = generator_fixture("exa1");
    auto vs = check_subadditive(f, subadditive_grid(f, cfg), cfg.sub_tol);
    std::size_t limit = std::min<std::size_t>(vs.size(), 200);
    for (std::size_t i = 0; i < limit; ++i) {
        const auto& v = vs[i];
        CHECK(f(v.x + v.y) == v.lhs);
        CHECK(f(v.x) + f(v.y) == v.rhs);
        CHECK(v.gap > 0.0);
    }
}

TEST_CASE("monotone scan") {
    GeneratorFunction g1 = make_generator("pw(x<1, x, x<5/3, 2-x, 1/3)", true);
    auto w = check_nondecreasing(g1, subadditive_grid(g1, cfg), cfg.sub_tol);
    REQUIRE(w.has_value());
    CHECK(w->a >= 1.0);
    CHECK(w->b <= 5.0 / 3.0);
    CHECK(w->ga > w->gb);

    GeneratorFunction root = make_generator("sqrt(x)", true);
    CHECK_FALSE(check_nondecreasing(root, subadditive_grid(root, cfg), cfg.sub_tol).has_value());

    GeneratorFunction g2 = make_generator("pw(x<1, x, x<4/3, 2-x, 2/3)", true);
    auto w2 = check_nondecreasing(g2, subadditive_grid(g2, cfg), cfg.sub_tol);
    REQUIRE(w2.has_value());
    CHECK(w2->a >= 1.0);
    CHECK(w2->ga > w2->gb);
}

TEST_CASE("even extension") {
    GeneratorFunction g = make_generator("pw(x<1, x, x<5/3, 2-x, 1/3)", true);
    GeneratorFunction f = even_extension(g);
    GeneratorFunction fixture = generator_fixture("exa1");
    for (double t = -4.0; t <= 4.0; t += 0.1) CHECK(f(t) == doctest::Approx(fixture(t)));

    GeneratorFunction lin = even_extension(make_generator("x", true));
    CHECK(lin(-3.0) == 3.0);
    GeneratorFunction root = even_extension(make_generator("sqrt(x)", true));
    CHECK(root(-4.0) == doctest::Approx(2.0));
}

TEST_CASE("half-line generators refuse negative arguments") {
    GeneratorFunction g = make_generator("sqrt(x)", true);
    CHECK_THROWS_AS(g(-1.0), DomainError);
}

TEST_CASE("violation maps to a triangle triple") {
    PairViolation v{3.0, -2.0, 1.0, 2.0 / 3.0, 1.0 / 3.0};
    auto t = violation_to_triple(v);
    CHECK(t[0] == 0.0);
    CHECK(t[1] == 2.0);
    CHECK(t[2] == 3.0);

    GeneratorFunction f = generator_fixture("exa1");
    MetricCandidate d = induced_candidate(f);
    TripleMargin tm = triangle_margin(d, t[0], t[1], t[2]);
    CHECK(tm.m3 == doctest::Approx(-1.0 / 3.0));
    CHECK(tm.argmin() == 3);
}

TEST_CASE("classification of the fixtures") {
    Verdict v1 = classify_translation_invariant(generator_fixture("exa1"), cfg);
    REQUIRE(v1.kind == VerdictKind::Refuted);
    REQUIRE(v1.violation.has_value());
    CHECK(v1.violation->magnitude == doctest::Approx(1.0 / 3.0));
    CHECK(v1.violation->witness.size() == 3);

    Verdict v2 = classify_translation_invariant(generator_fixture("exa2"), cfg);
    REQUIRE(v2.kind == VerdictKind::Certified);
    CHECK(v2.certificate->theorem == "T-even-subadditive");

    Verdict v3 = classify_translation_invariant(make_generator("sqrt(x)", true), cfg);
    REQUIRE(v3.kind == VerdictKind::Certified);
    CHECK(v3.certificate->theorem == "T-monotone-subadditive");
}

TEST_CASE("refutation transfers to the triangle inequalities") {
    GeneratorFunction f = generator_fixture("exa1");
    MetricCandidate d = induced_candidate(f);
    auto vs = check_subadditive(f, subadditive_grid(f, cfg), cfg.sub_tol);
    std::size_t limit = std::min<std::size_t>(vs.size(), 100);
    for (std::size_t i = 0; i < limit; ++i) {
        auto t = violation_to_triple(vs[i]);
        TripleMargin tm = triangle_margin(d, t[0], t[1], t[2]);
        CHECK(tm.m_min < 0.0);
    }
}

TEST_CASE("monotone subadditive half-line generators have subadditive even extensions") {
    std::mt19937_64 rng(1234);
    CheckConfig quick = cfg;
    quick.sub_steps_per_unit = 60;
    for (int i = 0; i < 20; ++i) {
        GeneratorFunction g = testgen::random_concave_pl(rng);
        REQUIRE_FALSE(check_nondecreasing(g, subadditive_grid(g, quick), quick.sub_tol).has_value());
        REQUIRE(check_subadditive(g, subadditive_grid(g, quick), quick.sub_tol).empty());
        GeneratorFunction f = even_extension(g);
        CHECK(check_subadditive(f, subadditive_grid(f, quick), quick.sub_tol).empty());
    }
}
