#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metricline/catalog.hpp"
#include "metricline/necessary.hpp"
#include "metricline/search.hpp"

using namespace metricline;

namespace {
const CheckConfig cfg;

std::vector<Point> small_grid() {
    std::vector<Point> pts;
    for (double x : {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0})
        for (double y : {-1.5, 0.0, 0.7, 2.0})
            if (std::fabs(x - y) > 1e-2) pts.push_back({x, y});
    return pts;
}
} // namespace

TEST_CASE("first-order bound holds for clean candidates") {
    FirstOrderResult chordal = check_first_order_bound(catalog_get("chordal").d, small_grid(), cfg);
    CHECK(chordal.witnesses.empty());

    FirstOrderResult absd =
        check_first_order_bound(candidate_from_source("abs(y-x)"), small_grid(), cfg);
    CHECK(absd.witnesses.empty());
}

TEST_CASE("first-order bound refutes the squared difference") {
    FirstOrderResult sq =
        check_first_order_bound(candidate_from_source("(x-y)^2"), {{1.0, 0.0}}, cfg);
    REQUIRE(!sq.witnesses.empty());
    CHECK(sq.witnesses.front().slope == doctest::Approx(2.0));
    CHECK(sq.witnesses.front().bound == doctest::Approx(0.0));
}

TEST_CASE("diagonal slopes") {
    DiagonalResult sq = check_diagonal_positivity(candidate_from_source("(x-y)^2"),
                                                  {-1.0, 0.0, 2.0}, cfg);
    CHECK(sq.witnesses.size() == 3);  // slope 0 everywhere on the diagonal

    DiagonalResult chordal =
        check_diagonal_positivity(catalog_get("chordal").d, {-1.0, 0.0, 2.0}, cfg);
    CHECK(chordal.witnesses.empty());
    CHECK(chordal.skips == 0);

    DiagonalResult absd =
        check_diagonal_positivity(candidate_from_source("abs(y-x)"), {0.0, 1.0}, cfg);
    CHECK(absd.witnesses.empty());
}

TEST_CASE("second-order comparison produces no witnesses on metrics") {
    SecondOrderResult absd = check_second_order(candidate_from_source("abs(y-x)"),
                                                small_grid(), cfg);
    CHECK(absd.witnesses.empty());

    SecondOrderResult chordal = check_second_order(catalog_get("chordal").d, small_grid(), cfg);
    CHECK(chordal.witnesses.empty());

    // smooth diagonal: both sides converge and compare equal
    SecondOrderResult sq = check_second_order(candidate_from_source("(x-y)^2"),
                                              {{1.0, 0.0}}, cfg);
    CHECK(sq.witnesses.empty());
    CHECK(sq.skips == 0);
}

TEST_CASE("battery is silent on every catalog entry") {
    std::vector<MetricCandidate> metrics;
    metrics.push_back(catalog_get("chordal").d);
    for (double p : {1.0, 2.0, 3.0}) metrics.push_back(catalog_get("p_relative", {{"p", p}}).d);
    metrics.push_back(catalog_get("relative").d);
    metrics.push_back(
        catalog_get("generalized_chordal", {{"alpha", 1.0}, {"beta", 1.0}, {"p", 3.0}}).d);
    metrics.push_back(catalog_get("concave_ti", {}, parse("sqrt(x)", {"x"})).d);

    for (const auto& d : metrics) {
        NecessaryReport r = run_necessary_battery(d, cfg);
        CHECK_FALSE(r.refuted());
    }
}

TEST_CASE("battery refutes designed non-metrics and the oracle agrees") {
    struct Case {
        const char* src;
        std::vector<double> grid;
    };
    const Case cases[] = {
        {"(x-y)^2", {0.0, 0.5, 1.0, 2.0}},
        {"min((x-y)^2, abs(x-y))", {0.0, 0.5, 1.0}},
    };
    for (const auto& c : cases) {
        MetricCandidate d = candidate_from_source(c.src);
        NecessaryReport r = run_necessary_battery(d, cfg);
        CHECK(r.refuted());
        CHECK(!brute_force_oracle(d, c.grid).empty());
    }
}

TEST_CASE("growing the tolerance never adds witnesses") {
    MetricCandidate sq = candidate_from_source("(x-y)^2");
    CheckConfig loose = cfg;
    loose.tol_nec = cfg.tol_nec * 1e3;
    auto tight_w = check_first_order_bound(sq, small_grid(), cfg);
    auto loose_w = check_first_order_bound(sq, small_grid(), loose);
    CHECK(loose_w.witnesses.size() <= tight_w.witnesses.size());
    for (const auto& w : loose_w.witnesses) {
        bool present = false;
        for (const auto& t : tight_w.witnesses)
            present = present || (t.p.x == w.p.x && t.p.y == w.p.y && t.dir == w.dir);
        CHECK(present);
    }
}
