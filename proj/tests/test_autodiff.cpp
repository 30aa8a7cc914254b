#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "metricline/autodiff.hpp"
#include "metricline/catalog.hpp"

using namespace metricline;

namespace {

const CheckConfig cfg;

MetricCandidate cand(const std::string& src) { return candidate_from_source(src); }

} // namespace

TEST_CASE("cross partial of the chordal candidate at (0,1)") {
    MetricCandidate chordal = catalog_get("chordal").d;
    DerivativeEstimate est = cross_partial(chordal, {0.0, 1.0}, cfg);
    CHECK(est.status == DerivStatus::ExactAd);
    CHECK(est.value == doctest::Approx(2.0 / std::pow(2.0, 1.5)).epsilon(1e-13));
    CHECK(est.value == doctest::Approx(0.7071067811865476).epsilon(1e-12));
}

TEST_CASE("cross partial of the bilinear form") {
    DerivativeEstimate est = cross_partial(cand("x*y"), {3.0, 5.0}, cfg);
    CHECK(est.status == DerivStatus::ExactAd);
    CHECK(est.value == 1.0);
}

TEST_CASE("cross partial matches the printed p-relative formula") {
    CatalogEntry e = catalog_get("p_relative", {{"p", 3.0}});
    DerivativeEstimate est = cross_partial(e.d, {1.0, 2.0}, cfg);
    const double oracle = closed_form_cross_partial(e, {1.0, 2.0});
    CHECK(est.status == DerivStatus::ExactAd);
    CHECK(std::fabs(est.value - oracle) <= 1e-9 * std::fabs(oracle));
}

TEST_CASE("forced finite differences agree with the smooth path") {
    MetricCandidate chordal = catalog_get("chordal").d;
    DerivativeEstimate ad = cross_partial(chordal, {0.5, 2.0}, cfg);
    DerivativeEstimate fd = cross_partial_fd(chordal, {0.5, 2.0}, cfg);
    CHECK(fd.status == DerivStatus::ConvergedFd);
    CHECK(fd.value == doctest::Approx(ad.value).epsilon(1e-7));
}

TEST_CASE("one-sided quotients at the absolute-value kink") {
    MetricCandidate absd = cand("abs(y-x)");
    // +e2 direction: slope of |h|/h from the right
    DerivativeEstimate plus = one_sided_partial(absd, {0.0, 0.0}, 2, +1, cfg);
    CHECK(plus.status == DerivStatus::ConvergedFd);
    CHECK(plus.value == doctest::Approx(1.0).epsilon(1e-9));
    // -e2 direction: the quotient uses +h*v, so the even kink gives +1 again
    DerivativeEstimate minus = one_sided_partial(absd, {0.0, 0.0}, 2, -1, cfg);
    CHECK(minus.value == doctest::Approx(1.0).epsilon(1e-9));
    // at a smooth point the -e2 estimate is minus the partial
    DerivativeEstimate smooth = one_sided_partial(absd, {0.0, 1.0}, 2, -1, cfg);
    CHECK(smooth.status == DerivStatus::ExactAd);
    CHECK(smooth.value == doctest::Approx(-1.0));
}

TEST_CASE("one-sided diagonal slope of the chordal candidate") {
    MetricCandidate chordal = catalog_get("chordal").d;
    for (double c : {0.0, 1.0, 2.5}) {
        DerivativeEstimate est = one_sided_partial(chordal, {c, c}, 2, +1, cfg);
        CHECK(est.status == DerivStatus::ConvergedFd);
        CHECK(est.value == doctest::Approx(2.0 / (1.0 + c * c)).epsilon(1e-6));
    }
}

TEST_CASE("gradients") {
    GradientEstimate g = gradient(cand("abs(y-x)"), {0.0, 1.0}, cfg);
    CHECK(g.d1.value == doctest::Approx(-1.0));
    CHECK(g.d2.value == doctest::Approx(1.0));
    CHECK(g.norm == doctest::Approx(std::sqrt(2.0)));

    GradientEstimate q = gradient(cand("(x-y)^2"), {0.0, 1.0}, cfg);
    CHECK(q.d1.value == doctest::Approx(-2.0));
    CHECK(q.d2.value == doctest::Approx(2.0));

    MetricCandidate chordal = catalog_get("chordal").d;
    GradientEstimate far = gradient(chordal, {0.0, 1e3}, cfg);
    CHECK(far.norm < 5e-3);
}

TEST_CASE("AD equals FD on random smooth candidates") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coef(0.2, 2.0);
    std::uniform_real_distribution<double> at(0.3, 3.0);
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (int i = 0; i < 40; ++i) {
        // smooth two-variable family, no kink nodes
        const std::string src = num(coef(rng)) + "*exp(-" + num(coef(rng)) + "*(x-y)^2) + " +
                                num(coef(rng)) + "*x*y/(1+x^2+y^2) + sqrt(1+(x+y)^2)";
        MetricCandidate d = cand(src);
        const double x = at(rng);
        const double y = -at(rng);
        DerivativeEstimate ad = cross_partial(d, {x, y}, cfg);
        DerivativeEstimate fd = cross_partial_fd(d, {x, y}, cfg);
        REQUIRE(ad.status == DerivStatus::ExactAd);
        REQUIRE(fd.status == DerivStatus::ConvergedFd);
        CHECK(std::fabs(ad.value - fd.value) <= 1e-6 * (1.0 + std::fabs(ad.value)));
    }
}

TEST_CASE("hyper-dual cross partials are exact on low-degree polynomials") {
    // f = (x^2*y + 3*x*y^3 - x*y)  =>  d2f/dxdy = 2x + 9y^2 - 1
    MetricCandidate poly = cand("x^2*y + 3*x*y^3 - x*y");
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        double x = u(rng), y = u(rng);
        double expect = 2.0 * x + 9.0 * y * y - 1.0;
        DerivativeEstimate est = cross_partial(poly, {x, y}, cfg);
        CHECK(est.status == DerivStatus::ExactAd);
        CHECK(std::fabs(est.value - expect) <= 1e-14 * (1.0 + std::fabs(expect)));
    }
}
