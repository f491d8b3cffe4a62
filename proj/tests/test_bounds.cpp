#include <doctest.h>

#include <cmath>
#include <numbers>

#include "drl/bounds.hpp"
#include "drl/error.hpp"

using namespace drl;
using std::numbers::e;

namespace {

const BoundParams unit{1.0, 1.0, 1.0, 0.0};

BoundParams with_c(double c) { return {c, 1.0, 1.0, 0.0}; }

}  // namespace

TEST_CASE("f_of_k examples") {
    CHECK_THROWS_AS(f_of_k(4, 1e9, unit), Error);
    CHECK_THROWS_AS(f_of_k(3, 1e9, unit), Error);
    CHECK_THROWS_AS(f_of_k(10, 2, unit), Error);
    // log(k/4) = 1 and log log N = 1, leaving 1 − log log(4e) = 1 − log(1 + log 4).
    CHECK(f_of_k(4 * e, std::exp(e), unit) == doctest::Approx(1 - std::log(1 + std::log(4.0))).epsilon(1e-14));
    CHECK(f_of_k(4 * e, std::exp(e), unit) == doctest::Approx(0.1302583138080563).epsilon(1e-13));
    const long double ref = std::log(250.0L) / std::log(std::log(1e9L)) - std::log(std::log(1000.0L));
    CHECK(f_of_k(1000, 1e9, unit) == doctest::Approx(double(ref)).epsilon(1e-13));
    CHECK(f_of_k(1000, 1e9, unit) == doctest::Approx(-0.11113607373813417).epsilon(1e-12));
}

TEST_CASE("eq3_gap") {
    const auto g = eq3_gap(1000, 1e9, unit);
    CHECK(g.vacuous);
    CHECK(g.f < 0);
    CHECK(g.gap == doctest::Approx(std::log(1e9) + std::fabs(g.f)));
    CHECK(g.gap > 0);

    const auto tiny = eq3_gap(5, std::exp(std::exp(e)), unit);
    CHECK(tiny.gap > 0);

    // Nonvacuous case: k large against a small N leaves a negative gap.
    const auto big = eq3_gap(1e60, 1e6, unit);
    REQUIRE_FALSE(big.vacuous);
    CHECK(big.f > 0);
    CHECK(big.gap == doctest::Approx(std::log(1e6) - (big.f * std::log(1e60 * big.f) - big.f)));
    CHECK(big.gap < 0);
    CHECK_THROWS_AS(eq3_gap(4, 1e6, unit), Error);
}

TEST_CASE("f_N is increasing in k on I_N") {
    const BoundParams p{};
    for (double n : {1e3, 1e6, 1e9, 1e15}) {
        const double k0 = std::exp(p.c1 * p.c2 * std::log(std::log(n)));
        double previous = -INFINITY;
        for (double k = std::max(k0, 4.5); k < 1e12; k *= 1.3) {
            const double f = f_of_k(k, n, p);
            REQUIRE(f > previous);
            previous = f;
        }
    }
}

TEST_CASE("bound_theorem1") {
    CHECK(bound_theorem1(std::exp(e), with_c(1)) == doctest::Approx(std::exp(std::sqrt(e))).epsilon(1e-14));
    CHECK(bound_theorem1(std::exp(e), with_c(1)) == doctest::Approx(5.2003257647899614).epsilon(1e-14));
    CHECK(bound_theorem1(1e6, with_c(1)) == doctest::Approx(412.81953493849494).epsilon(1e-13));
    CHECK(bound_theorem1(1e12, with_c(0.8)) == doctest::Approx(2123.9789134843604).epsilon(1e-13));
}

TEST_CASE("bound_explicit") {
    CHECK(bound_explicit(std::exp(e), 0.5) == doctest::Approx(std::exp(std::sqrt(e))).epsilon(1e-14));
    CHECK(bound_explicit(1e6, 0) == doctest::Approx(70.73295531366394).epsilon(1e-13));
    CHECK(bound_explicit(1e9, 0.1) == doctest::Approx(463.71081608590845).epsilon(1e-13));
    CHECK_THROWS_AS(bound_explicit(1e6, -0.1), Error);
}

TEST_CASE("bound_theorem2") {
    CHECK(bound_theorem2(std::exp(e), with_c(1)) == doctest::Approx(std::exp(std::cbrt(e))).epsilon(1e-14));
    CHECK(bound_theorem2(std::exp(e), with_c(1)) == doctest::Approx(4.037446449124544).epsilon(1e-14));
    CHECK(bound_theorem2(1e6, with_c(1)) == doctest::Approx(27.395095089127267).epsilon(1e-13));
    CHECK(bound_theorem2(1e12, with_c(1)) == doctest::Approx(90.87984275259379).epsilon(1e-13));
}

TEST_CASE("bounds are strictly increasing in N") {
    const BoundParams p{};
    double a = 0, b = 0, c = 0;
    for (double n = 16; n < 1e18; n *= 1.7) {
        const double t1 = bound_theorem1(n, p), ex = bound_explicit(n, p.eps), t2 = bound_theorem2(n, p);
        REQUIRE(t1 > a);
        REQUIRE(ex > b);
        REQUIRE(t2 > c);
        a = t1;
        b = ex;
        c = t2;
    }
}

TEST_CASE("bound ordering on the log grid and its crossover") {
    const auto report = bound_ordering(3, 15);
    for (const auto& pt : report.grid) CHECK(pt.ordered);
    const double x = report.crossover_theorem2_explicit;
    REQUIRE(x > 0);
    // theorem2 = explicit exactly where (log N·log log N)^{1/6} = √2.
    CHECK(std::log(x) * std::log(std::log(x)) == doctest::Approx(8.0).epsilon(1e-9));
    CHECK(x < 1e3);
}

TEST_CASE("compare joins ℓ_N with the bounds") {
    const BoundParams p{1.0, 1.1, 1.1, 0.0};
    const auto c4 = compare(10'000, p);
    CHECK(c4.ell == 4);
    CHECK(c4.theorem1_ok);
    CHECK(c4.explicit_ok);
    CHECK(c4.theorem2_ok);
    const auto c2 = compare(100, p);
    CHECK(c2.ell == 3);
    CHECK(c2.theorem2 == doctest::Approx(6.793222544231963).epsilon(1e-12));
    CHECK(c2.theorem2_ok);
    CHECK_THROWS_AS(compare(15, 1, p), Error);
}

TEST_CASE("guard band on the integer comparison") {
    CHECK(within_bound(7, 7.0));
    CHECK(within_bound(7, 7.0 * (1 - 1e-13)));
    CHECK_FALSE(within_bound(7, 6.99));
    const auto c = compare(100, 1000, BoundParams{});
    CHECK_FALSE(c.explicit_ok);
}

TEST_CASE("params validation and digest") {
    const BoundParams p{};
    CHECK(p.contradiction_regime());
    CHECK_FALSE(BoundParams{1.0, 1.1, 1.1, 0}.contradiction_regime());
    CHECK(p.digest().size() == 16);
    CHECK(p.digest() == BoundParams{}.digest());
    CHECK(p.digest() != BoundParams{1.3, 1.1, 1.1, 0.1}.digest());
    CHECK_THROWS_AS(bound_theorem1(1e6, BoundParams{0, 1, 1, 0}), Error);
    CHECK_THROWS_AS(bound_theorem1(1e6, BoundParams{1, 1, 1, -1}), Error);
}
