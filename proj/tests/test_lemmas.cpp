#include <doctest.h>

#include <cmath>
#include <random>

#include <json.hpp>

#include "drl/error.hpp"
#include "drl/lemmas.hpp"
#include "oracles.hpp"

using namespace drl;

namespace {

// Legendre-style count of p-factors in [lo, hi).
Natural nu_window(Natural p, Natural lo, Natural hi) {
    Natural total = 0;
    for (Natural n = lo; n < hi; ++n)
        for (Natural m = n; m % p == 0; m /= p) ++total;
    return total;
}

Natural weighted_nu(Natural m) {
    Natural s = 0;
    for (auto [p, e] : oracle::factorize(m)) s += (p - 1) * e;
    return s;
}

}  // namespace

TEST_CASE("lemma ids") {
    CHECK(parse_lemma("l6") == LemmaId::L6);
    CHECK(parse_lemma("EQ5") == LemmaId::EQ5);
    CHECK(parse_lemma("rundiv") == LemmaId::RUNDIV);
    CHECK_FALSE(parse_lemma("L7"));
    for (LemmaId id : all_lemmas()) CHECK(parse_lemma(lemma_name(id)) == id);
    CHECK(lemma_is_exact(LemmaId::L1));
    CHECK_FALSE(lemma_is_exact(LemmaId::L3));
    CHECK(all_lemmas().size() == 9);
}

TEST_CASE("lcm(1..n+1) >= 2^n") {
    const auto r = check_lemma1(2000);
    CHECK(r.pass());
    CHECK(r.range.lo == 1);
    CHECK(r.range.hi == 2001);
    // Tightest at n = 1..2: lcm(1,2) = 2 = 2^1 and lcm(1,2,3) = 6 > 4.
    CHECK(r.worst_residual == doctest::Approx(1.0));
    CHECK_THROWS_AS(check_lemma1(0), Error);
}

TEST_CASE("prime sums") {
    CHECK(mertens_sum(10) == doctest::Approx(1.176190476190476).epsilon(1e-14));
    CHECK(mertens_sum(2) == doctest::Approx(0.5));
    CHECK(chebyshev_theta(10) == doctest::Approx(std::log(210.0)).epsilon(1e-14));
    CHECK(chebyshev_theta(2) == doctest::Approx(std::log(2.0)));
    CHECK(sum_inv_log_p(3) == doctest::Approx(1 / std::log(2.0) + 1 / std::log(3.0)));
    CHECK(sum_inv_log_p(10) == doctest::Approx(3.4881675444451634).epsilon(1e-14));
    CHECK(sum_primes(10) == 17);
    CHECK(sum_primes(2) == 2);
    CHECK_THROWS_AS(sum_primes(1), Error);
    PrimeTable t(1000);
    CHECK(mertens_sum(t, 10) == mertens_sum(10));
    CHECK(sum_primes(t, 1000) == sum_primes(1000));
    CHECK(sum_primes(1000) == 76127);
}

TEST_CASE("log grid") {
    const auto g = log_grid(1000, 1'000'000);
    REQUIRE(g.size() == 7);
    CHECK(g.front() == 1000);
    CHECK(g[1] == 3162);
    CHECK(g.back() == 1'000'000);
}

TEST_CASE("monitors stay informational") {
    const auto r2 = monitor_lemma2(1'000'000);
    CHECK(r2.pass());
    CHECK_FALSE(r2.trend.empty());
    // Mertens' constant 0.2614972128...
    for (const auto& pt : r2.trend)
        if (pt.n >= 100'000) CHECK(std::fabs(pt.value - std::log(std::log(double(pt.n))) - 0.2615) < 0.01);
    const auto r3 = monitor_lemma3(1'000'000);
    CHECK(r3.pass());
    CHECK(std::fabs(r3.trend.back().residual) < 0.01);
    CHECK(monitor_lemma4(1'000'000).pass());
    CHECK(monitor_lemma5(1'000'000).pass());
}

TEST_CASE("Ω bound for single n") {
    const auto two = check_lemma6(2);
    CHECK(two.lhs == doctest::Approx(1.0));
    CHECK(two.rhs == 1);
    CHECK(two.pass);
    CHECK(two.equality);
    const auto c48 = check_lemma6(48);
    CHECK(c48.lhs == doctest::Approx(std::log(48.0) / std::log(2.0)));
    CHECK(c48.rhs == 5);
    CHECK(c48.pass);
    CHECK_FALSE(c48.equality);
    CHECK_THROWS_AS(check_lemma6(1), Error);
    // p^{q-1} with q prime: d = q, rhs = q − 1 = log n / log p.
    for (auto [p, q] : {std::pair<Natural, Natural>{3, 5}, {5, 3}, {2, 13}}) {
        Natural n = 1;
        for (Natural i = 0; i + 1 < q; ++i) n *= p;
        const auto c = check_lemma6(n);
        CHECK(c.pass);
        CHECK(c.equality);
    }
    CHECK_THROWS_AS(check_lemma6(12, 6, 5), Error);
    CHECK_THROWS_AS(check_lemma6(12, 1, 2), Error);
}

TEST_CASE("Ω bound against oracle on small n") {
    for (Natural n = 2; n <= 3000; ++n) {
        const Natural rhs = weighted_nu(oracle::divisor_count(n));
        const auto c = check_lemma6(n);
        REQUIRE(c.rhs == rhs);
        REQUIRE(c.pass);
    }
    const auto r = check_lemma6_range(1'000'000, 2);
    CHECK(r.pass());
    CHECK(r.range.hi == 1'000'001);
}

TEST_CASE("k vs weighted valuation of k+1") {
    const auto one = check_eq8(1);
    CHECK(one.lhs == 1);
    CHECK(one.rhs == 1);
    CHECK(one.pass);
    const auto eleven = check_eq8(11);
    CHECK(eleven.rhs == 4);
    CHECK(eleven.pass);
    for (Natural k = 1; k <= 5000; ++k) REQUIRE(check_eq8(k).rhs == weighted_nu(k + 1));
    CHECK_THROWS_AS(check_eq8(0), Error);
    CHECK(check_eq8_range(1'000'000).pass());
}

TEST_CASE("ν_p over a window") {
    const auto a = check_eq5(2, {1, 5}, 4);
    CHECK(a.lhs == 3);
    CHECK(a.rhs == doctest::Approx(6.0));
    CHECK(a.pass);
    const auto b = check_eq5(3, {9, 10}, 9);
    CHECK(b.lhs == 2);
    CHECK(b.rhs == doctest::Approx(2.5));
    CHECK(b.pass);
    CHECK_THROWS_AS(check_eq5(4, {1, 9}, 10), Error);
    CHECK_THROWS_AS(check_eq5(2, {1, 9}, 5), Error);
    // p wider than the window still satisfies the bound.
    CHECK(check_eq5(101, {101, 103}, 1000).pass);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 3000; ++i) {
        const Natural ps[] = {2, 3, 5, 7, 11, 13, 101};
        const Natural p = ps[rng() % 7];
        const Natural width = p + rng() % 200;
        const Natural lo = 1 + rng() % 100'000;
        const Natural n = lo + width - 1 + rng() % 1000;
        const auto c = check_eq5(p, {lo, lo + width}, n);
        REQUIRE(c.lhs == nu_window(p, lo, lo + width));
        REQUIRE(c.pass);
    }
    const auto r = check_eq5_random(2000, 42);
    CHECK(r.pass());
    CHECK(r.seed == 42);
}

TEST_CASE("run divisibility") {
    CHECK(run_divisibility_holds({171893, 7, 8}));
    CHECK(run_divisibility_holds({2, 2, 2}));
    CHECK_FALSE(run_divisibility_holds({1, 4, 9}));   // 2 ∤ 9
    CHECK_FALSE(run_divisibility_holds({1, 8, 10}));  // lcm(1..3) = 6 ∤ 10
    CHECK(run_divisibility_holds({1, 8, 12}));
    CHECK(run_divisibility_holds({1, 1, 1}));
    CHECK(check_run_divisibility(300'000).pass());
}

TEST_CASE("report json carries the required fields") {
    const auto j = nlohmann::json::parse(lemma_report_json(check_lemma1(50)));
    for (const char* key : {"lemma_id", "range", "verdict", "worst_residual", "witnesses", "seed"})
        CHECK(j.contains(key));
    CHECK(j["lemma_id"] == "L1");
    CHECK(j["verdict"] == "pass");
    const auto m = nlohmann::json::parse(lemma_report_json(monitor_lemma3(10'000)));
    CHECK(m["verdict"] == "monitor");
    CHECK(m.contains("trend"));
}

TEST_CASE("run_lemma dispatch honours max and seed") {
    VerifyOptions o;
    o.max = 100;
    o.seed = 5;
    const auto r = run_lemma(LemmaId::EQ8, o);
    CHECK(r.range.hi == 101);
    CHECK(default_range(LemmaId::L6) == 1'000'000);
}
