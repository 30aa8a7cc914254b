#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "metricline/expr.hpp"
#include "metricline/hyperdual.hpp"

using namespace metricline;

namespace {

HyperDual eval_hd(const Expr& e, double x, double y, double sx = 1.0, double sy = 1.0) {
    EvalEnv<HyperDual> env;
    env.bind("x", HyperDual(x, sx, 0.0, 0.0));
    env.bind("y", HyperDual(y, 0.0, sy, 0.0));
    return eval(e, env);
}

} // namespace

TEST_CASE("product algebra carries the mixed coefficient") {
    HyperDual a(2.0, 1.0, 0.0, 0.0);
    HyperDual b(5.0, 0.0, 1.0, 0.0);
    HyperDual p = a * b;
    CHECK(p.v == 10.0);
    CHECK(p.dx == 5.0);
    CHECK(p.dy == 2.0);
    CHECK(p.dxy == 1.0);

    // (a*b).dxy = a.v*b.dxy + a.dx*b.dy + a.dy*b.dx + a.dxy*b.v
    HyperDual u(1.5, 2.0, 3.0, 4.0);
    HyperDual w(-0.5, 5.0, 7.0, 11.0);
    HyperDual q = u * w;
    CHECK(q.dxy == doctest::Approx(1.5 * 11.0 + 2.0 * 7.0 + 3.0 * 5.0 + 4.0 * (-0.5)).epsilon(1e-15));
}

TEST_CASE("constants are seedless") {
    HyperDual c(3.25);
    CHECK(c.dx == 0.0);
    CHECK(c.dy == 0.0);
    CHECK(c.dxy == 0.0);
    CHECK_FALSE(scalar_has_seed(c));
}

TEST_CASE("division inverts multiplication") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        HyperDual a(u(rng), u(rng), u(rng), u(rng));
        HyperDual b(u(rng) + 3.0, u(rng), u(rng), u(rng));
        HyperDual r = (a / b) * b;
        CHECK(r.v == doctest::Approx(a.v).epsilon(1e-13));
        CHECK(r.dx == doctest::Approx(a.dx).epsilon(1e-12));
        CHECK(r.dy == doctest::Approx(a.dy).epsilon(1e-12));
        CHECK(r.dxy == doctest::Approx(a.dxy).epsilon(1e-11));
    }
}

TEST_CASE("bilinear form has unit cross derivative") {
    ExprPtr e = parse("x*y", {"x", "y"});
    CHECK(eval_hd(*e, 3.0, 5.0).dxy == 1.0);
}

TEST_CASE("polynomial cross partials are exact") {
    // f = x^3*y^2 + 2*x*y, d2f/dxdy = 6*x^2*y + 2
    ExprPtr e = parse("x^3*y^2 + 2*x*y", {"x", "y"});
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        double x = u(rng), y = u(rng);
        double expect = 6.0 * x * x * y + 2.0;
        CHECK(eval_hd(*e, x, y).dxy == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("value slot agrees bitwise with plain evaluation") {
    const char* sources[] = {
        "2*abs(y-x)/(sqrt(1+x^2)*sqrt(1+y^2))",
        "abs(y-x)/(abs(x)+abs(y))",
        "exp(-(x-y)^2) + log(1+x^2)",
        "min(abs(x), abs(y)) + max(x^2, y^2)",
        "(abs(x)^3 + abs(y)^3)^(1/3)",
    };
    std::mt19937_64 rng(321);
    std::uniform_real_distribution<double> u(0.1, 4.0);
    for (const char* src : sources) {
        ExprPtr e = parse(src, {"x", "y"});
        for (int i = 0; i < 100; ++i) {
            double x = u(rng), y = u(rng) + 4.0;
            double plain = eval_xy(*e, x, y);
            CHECK(eval_hd(*e, x, y).v == plain);                 // seeded
            CHECK(eval_hd(*e, x, y, 0.0, 0.0).v == plain);       // seedless
        }
    }
}

TEST_CASE("mixed partial is symmetric in the seed roles bitwise") {
    const char* sources[] = {
        "2*abs(y-x)/(sqrt(1+x^2)*sqrt(1+y^2))",
        "exp(x*y)/(1+x^2+y^2)",
        "(abs(x)^3 + abs(y)^3)^(1/3)",
    };
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (const char* src : sources) {
        ExprPtr e = parse(src, {"x", "y"});
        for (int i = 0; i < 100; ++i) {
            double x = u(rng), y = u(rng) + 3.5;
            EvalEnv<HyperDual> xy, yx;
            xy.bind("x", HyperDual::seed_x(x));
            xy.bind("y", HyperDual::seed_y(y));
            yx.bind("x", HyperDual::seed_y(x));
            yx.bind("y", HyperDual::seed_x(y));
            CHECK(eval(*e, xy).dxy == eval(*e, yx).dxy);
        }
    }
}

TEST_CASE("kink flags fire only with a live seed") {
    ExprPtr e = parse("abs(x) + y", {"x", "y"});
    EvalSettings st;
    st.kink_tol = 1e-12;

    EvalEnv<HyperDual> seeded;
    seeded.bind("x", HyperDual::seed_x(0.0));
    seeded.bind("y", HyperDual::seed_y(1.0));
    EvalDiag diag;
    eval(*e, seeded, st, &diag);
    CHECK(diag.kink_count == 1);

    // x enters as an odd power: the seed of abs' argument vanishes at 0 and
    // the kink must not fire
    ExprPtr cubed = parse("abs(x^3) + y", {"x", "y"});
    EvalDiag diag2;
    HyperDual r = eval(*cubed, seeded, st, &diag2);
    CHECK(diag2.kink_count == 0);
    CHECK(r.v == 1.0);
    CHECK(r.dx == 0.0);
    CHECK(r.dxy == 0.0);

    // off the kink nothing fires
    EvalEnv<HyperDual> off;
    off.bind("x", HyperDual::seed_x(0.5));
    off.bind("y", HyperDual::seed_y(1.0));
    EvalDiag diag3;
    eval(*e, off, st, &diag3);
    CHECK(diag3.kink_count == 0);
}

TEST_CASE("general power matches finite differences") {
    ExprPtr e = parse("(abs(x)^3 + abs(y)^3)^(1/3)", {"x", "y"});
    double x = 1.3, y = 2.1, h = 1e-5;
    double fd = (eval_xy(*e, x + h, y + h) - eval_xy(*e, x + h, y - h) -
                 eval_xy(*e, x - h, y + h) + eval_xy(*e, x - h, y - h)) /
                (4.0 * h * h);
    CHECK(eval_hd(*e, x, y).dxy == doctest::Approx(fd).epsilon(1e-5));
}
