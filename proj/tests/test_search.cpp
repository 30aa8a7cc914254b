#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metricline/catalog.hpp"
#include "metricline/search.hpp"
#include "metricline/subadditive.hpp"

using namespace metricline;

namespace {
const CheckConfig cfg;
}

TEST_CASE("triangle margins by direct evaluation") {
    MetricCandidate exa1 = induced_candidate(generator_fixture("exa1"));
    TripleMargin tm = triangle_margin(exa1, 0.0, 2.0, 3.0);
    CHECK(tm.m3 == doctest::Approx(1.0 / 3.0 + 1.0 / 3.0 - 1.0));
    CHECK(tm.m_min == doctest::Approx(-1.0 / 3.0));

    MetricCandidate absd = candidate_from_source("abs(y-x)");
    TripleMargin ta = triangle_margin(absd, -1.0, 0.5, 2.0);
    CHECK(ta.m1 == doctest::Approx(0.0));
    CHECK(ta.m2 >= 0.0);
    CHECK(ta.m3 >= 0.0);

    MetricCandidate chordal = catalog_get("chordal").d;
    TripleMargin tc = triangle_margin(chordal, 0.0, 1.0, 2.0);
    CHECK(tc.m_min > 0.0);
}

TEST_CASE("brute force oracle on clean and violating candidates") {
    MetricCandidate chordal = catalog_get("chordal").d;
    CHECK(brute_force_oracle(chordal, oracle_grid(cfg)).empty());

    MetricCandidate exa1 = induced_candidate(generator_fixture("exa1"));
    auto vs = brute_force_oracle(exa1, {0.0, 2.0, 3.0, -1.0, 0.5});
    REQUIRE(!vs.empty());
    bool found = false;
    for (const auto& v : vs)
        if (v.witness == std::vector<double>{0.0, 2.0, 3.0}) found = true;
    CHECK(found);

    MetricCandidate sq = candidate_from_source("(x-y)^2");
    auto vq = brute_force_oracle(sq, {0.0, 0.5, 1.0});
    REQUIRE(!vq.empty());
    CHECK(vq.front().kind == ViolationKind::Triangle1);
    CHECK(vq.front().magnitude == doctest::Approx(0.5));
    CHECK(vq.front().witness == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("oracle flags symmetry and positivity breaks") {
    MetricCandidate skew = candidate_from_source("abs(y-x) + 0.1*x");
    auto vs = brute_force_oracle(skew, {0.0, 1.0, 2.0});
    bool sym = false;
    for (const auto& v : vs) sym = sym || v.kind == ViolationKind::Symmetry;
    CHECK(sym);

    MetricCandidate signed_d = candidate_from_source("x-y");
    auto vp = brute_force_oracle(signed_d, {0.0, 1.0});
    bool pos = false;
    for (const auto& v : vp) pos = pos || v.kind == ViolationKind::Positivity;
    CHECK(pos);
}

TEST_CASE("counterexample search reaches the stated depth on the first fixture") {
    MetricCandidate exa1 = induced_candidate(generator_fixture("exa1"));
    auto v = find_counterexample(exa1, cfg);
    REQUIRE(v.has_value());
    CHECK(v->magnitude >= 1.0 / 3.0 - 1e-9);
    // witness re-evaluates to the reported magnitude
    REQUIRE(v->witness.size() == 3);
    TripleMargin tm = triangle_margin(exa1, v->witness[0], v->witness[1], v->witness[2]);
    CHECK(std::fabs(-tm.m_min - v->magnitude) <= 1e-12);
}

TEST_CASE("counterexample search is silent on certified candidates") {
    MetricCandidate chordal = catalog_get("chordal").d;
    auto v = find_counterexample(chordal, cfg);
    CHECK_FALSE(v.has_value());
    // none returned implies the grid oracle is empty as well
    CHECK(brute_force_oracle(chordal, oracle_grid(cfg)).empty());

    MetricCandidate prel = catalog_get("p_relative", {{"p", 2.0}}).d;
    auto v2 = find_counterexample(prel, cfg);
    CHECK_FALSE(v2.has_value());
    CHECK(brute_force_oracle(prel, oracle_grid(cfg)).empty());
}

TEST_CASE("search matches the fine-grid oracle on a designed candidate") {
    // kinked-plus-quadratic mix on a small window
    MetricCandidate mix = candidate_from_source("sqrt(abs(y-x)) + 0.3*(x-y)^2");
    CheckConfig windowed = cfg;
    windowed.grid_exp_min = -2.0;
    windowed.grid_exp_max = 0.301;  // ~[-2, 2]
    auto v = find_counterexample(mix, windowed);

    std::vector<double> fine;
    for (int i = 0; i <= 200; ++i) fine.push_back(-2.0 + 4.0 * i / 200.0);
    auto oracle = brute_force_oracle(mix, fine);

    REQUIRE(v.has_value());
    REQUIRE(!oracle.empty());
    // both routes agree on refutation, at comparable depth
    CHECK(v->magnitude >= 0.99 * oracle.front().magnitude);
}

TEST_CASE("deterministic under a fixed seed") {
    MetricCandidate exa1 = induced_candidate(generator_fixture("exa1"));
    auto a = find_counterexample(exa1, cfg);
    auto b = find_counterexample(exa1, cfg);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->witness == b->witness);
    CHECK(a->magnitude == b->magnitude);
}
