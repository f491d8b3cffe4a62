#include <doctest.h>

#include <numeric>
#include <random>

#include "drl/error.hpp"
#include "drl/jacobsthal.hpp"
#include "oracles.hpp"

using namespace drl;

namespace {

std::vector<Natural> support_of(Natural m) {
    std::vector<Natural> out;
    for (auto [p, e] : oracle::factorize(m)) out.push_back(p);
    return out;
}

bool squarefree(Natural m) {
    for (auto [p, e] : oracle::factorize(m))
        if (e > 1) return false;
    return true;
}

}  // namespace

TEST_CASE("small supports") {
    const Natural two[] = {2};
    CHECK(jacobsthal_exact(two).j_value == 2);
    const Natural six[] = {2, 3};
    const auto p6 = jacobsthal_exact(six);
    CHECK(p6.j_value == 4);
    CHECK(p6.witness_gap_start == 2);
    CHECK(p6.modulus == 6);
    const Natural p210[] = {2, 3, 5, 7};
    CHECK(jacobsthal_exact(p210).j_value == 10);
    CHECK(jacobsthal_primorial(5).j_value == 6);
    CHECK(jacobsthal_primorial(11).j_value == 14);
    CHECK(jacobsthal_primorial(11).witness_gap_start == 114);
}

TEST_CASE("support validation") {
    CHECK_THROWS_AS(jacobsthal_exact(std::span<const Natural>{}), Error);
    const Natural dup[] = {2, 3, 3};
    CHECK_THROWS_AS(jacobsthal_exact(dup), Error);
    const Natural comp[] = {2, 9};
    CHECK_THROWS_AS(jacobsthal_exact(comp), Error);
    CHECK_THROWS_AS(jacobsthal_primorial(1), Error);
}

TEST_CASE("agrees with the gcd scan for squarefree m up to 3000") {
    for (Natural m = 2; m <= 3000; ++m) {
        if (!squarefree(m)) continue;
        const auto s = support_of(m);
        const auto prof = jacobsthal_exact(s);
        const auto [j, start] = oracle::jacobsthal_gcd(m);
        REQUIRE(prof.j_value == j);
        REQUIRE(prof.witness_gap_start == start);
    }
}

TEST_CASE("definition holds on the witness") {
    for (Natural m : {30ul, 2310ul, 30030ul, 7429ul}) {
        const auto prof = jacobsthal_exact(support_of(m));
        const Natural j = prof.j_value, s = prof.witness_gap_start;
        // j − 1 consecutive non-coprimes starting at s...
        for (Natural x = s; x < s + j - 1; ++x) REQUIRE(std::gcd(x, m) != 1);
        // ...and every window of length j has a coprime element.
        for (Natural a = 1; a <= m; ++a) {
            bool found = false;
            for (Natural x = a; x < a + j && !found; ++x) found = std::gcd(x, m) == 1;
            REQUIRE(found);
        }
    }
}

TEST_CASE("chunking and threads do not change the result") {
    JacobsthalOptions narrow;
    narrow.chunk = 97;
    narrow.threads = 3;
    for (Natural m : {7ul, 11ul, 13ul, 17ul}) {
        const auto a = jacobsthal_primorial(m);
        const auto b = jacobsthal_primorial(m, narrow);
        CHECK(a.j_value == b.j_value);
        CHECK(a.witness_gap_start == b.witness_gap_start);
    }
}

TEST_CASE("budget") {
    JacobsthalOptions tight;
    tight.budget = 1000;
    CHECK_THROWS_AS(jacobsthal_primorial(11, tight), Error);
    try {
        jacobsthal_primorial(11, tight);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::budget);
    }
    CHECK_THROWS_AS(jacobsthal_table(11, tight, false), Error);
    const auto t = jacobsthal_table(11, tight, true);
    CHECK(t.truncated);
    CHECK(t.rows.size() == 4);  // 2·3·5·7 = 210 fits, 2310 does not
}

TEST_CASE("default table") {
    const auto& t = default_jacobsthal_table();
    const Natural expect_m[] = {2, 3, 5, 7, 11, 13, 17, 19};
    const Natural expect_j[] = {2, 4, 6, 10, 14, 22, 26, 34};
    REQUIRE(t.rows.size() == 8);
    CHECK(t.truncated);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(t.rows[i].m == expect_m[i]);
        CHECK(t.rows[i].profile.j_value == expect_j[i]);
    }
    CHECK(t.rows.back().profile.modulus == 9699690);
    for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i].profile.j_value > t.rows[i - 1].profile.j_value);
    const auto csv = jacobsthal_table_csv(t);
    CHECK(csv.rfind("M,primorial,j,witness_start\n", 0) == 0);
    CHECK(csv.find("19,9699690,34,60044\n") != std::string::npos);
}

TEST_CASE("coprime witness") {
    CHECK(coprime_witness({2, 5}, 2) == Natural{3});
    CHECK(coprime_witness({114, 127}, 5));
    Natural first = 0;
    for (Natural x = 114; x < 127 && !first; ++x)
        if (std::gcd(x, Natural{30}) == 1) first = x;
    CHECK(coprime_witness({114, 127}, 5) == first);
    CHECK_FALSE(coprime_witness({2, 11}, 7));
    CHECK(coprime_witness({2, 12}, 7) == Natural{11});

    std::mt19937_64 rng(11);
    for (int i = 0; i < 10'000; ++i) {
        const Natural x = 2 + rng() % 100'000'000;
        const bool coprime = std::gcd(x, Natural{9699690}) == 1;
        REQUIRE(coprime_witness({x, x + 1}, 19).has_value() == coprime);
    }
}

TEST_CASE("largest M with j(M#) <= k") {
    CHECK(largest_m_with_j_at_most(2).m == 2);
    CHECK(largest_m_with_j_at_most(3).m == 2);
    CHECK(largest_m_with_j_at_most(6).m == 5);
    CHECK(largest_m_with_j_at_most(7).m == 5);
    CHECK(largest_m_with_j_at_most(14).m == 11);
    CHECK_FALSE(largest_m_with_j_at_most(14).table_limited);
    CHECK(largest_m_with_j_at_most(1000).table_limited);
    CHECK(largest_m_with_j_at_most(1000).m == 19);
    CHECK_THROWS_AS(largest_m_with_j_at_most(1), Error);
}

TEST_CASE("pipeline on the runs below 1e6") {
    const auto best = longest_run_up_to(1'000'000).first;
    const auto c = check_pipeline(best);
    CHECK(c.ok());
    CHECK(c.selection.m == 5);
    REQUIRE(c.witness);
    CHECK(*c.witness >= best.start);
    CHECK(*c.witness < best.end());
    CHECK(c.p_min > 5);

    std::size_t checked = 0;
    RunScan scan({.n = 200'000});
    scan.set_visitor([&](const RunRecord& r) {
        if (r.length < 2) return;
        const auto p = check_pipeline(r);
        REQUIRE(p.ok());
        ++checked;
    });
    scan.run_to_completion();
    CHECK(checked > 18'000);
}
