#include <doctest.h>

#include <random>

#include "drl/error.hpp"
#include "drl/lemmas.hpp"
#include "drl/sieve.hpp"
#include "oracles.hpp"

using namespace drl;

namespace {

std::vector<std::uint32_t> counts(Natural lo, Natural hi) { return sieve_divisor_counts({lo, hi}); }

RunScan finished(ScanOptions o) {
    RunScan s(o);
    s.run_to_completion();
    return s;
}

}  // namespace

TEST_CASE("sieve_divisor_counts examples") {
    CHECK(counts(33, 36) == std::vector<std::uint32_t>{4, 4, 4});
    CHECK(counts(1, 2) == std::vector<std::uint32_t>{1});
    CHECK(counts(242, 246) == std::vector<std::uint32_t>{6, 6, 6, 6});
    for (Natural n : {33, 34, 35}) CHECK(oracle::divisor_count(n) == 4);
    for (Natural n : {242, 243, 244, 245}) CHECK(oracle::divisor_count(n) == 6);
}

TEST_CASE("sieve rejects bad windows and oversize windows") {
    CHECK_THROWS_AS(counts(0, 5), Error);
    CHECK_THROWS_AS(counts(5, 5), Error);
    try {
        sieve_divisor_counts({1, 1002}, 1000);
        FAIL("capacity not enforced");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::capacity);
    }
}

TEST_CASE("sieve agrees with factorization on random windows below 1e9") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<Natural> lo_pick(1, 1'000'000'000 - 10'000);
    std::uniform_int_distribution<Natural> width_pick(1, 10'000);
    DivisorSieve sieve;
    for (int t = 0; t < 200; ++t) {
        const Natural lo = lo_pick(rng);
        const Natural hi = lo + width_pick(rng);
        const auto d = sieve({lo, hi});
        for (Natural n = lo; n < hi; ++n) REQUIRE(d[n - lo] == divisor_count(n));
    }
}

TEST_CASE("sieve is exact across the 32-bit product boundary and for large inputs") {
    DivisorSieve sieve;
    for (Natural lo : {Natural{4294967296} - 500, Natural{1} << 40, Natural{999999999000000}}) {
        const auto d = sieve({lo, lo + 1000});
        for (Natural n = lo; n < lo + 1000; ++n) REQUIRE(d[n - lo] == divisor_count(n));
    }
}

TEST_CASE("longest_run_up_to examples") {
    CHECK(longest_run_up_to(10).first == RunRecord{2, 2, 2});
    CHECK(longest_run_up_to(100).first == RunRecord{33, 3, 4});

    const auto d = oracle::divisor_counts_by_multiples(1'000'000);
    const auto runs = oracle::runs_from(d);
    oracle::Run best{0, 0, 0};
    for (const auto& r : runs)
        if (r.length > best.length) best = r;
    CHECK(best.length == 7);
    CHECK(best.start == 171893);
    CHECK(longest_run_up_to(1'000'000).first == RunRecord{best.start, best.length, best.d});
    CHECK_THROWS_AS(longest_run_up_to(1), Error);
}

TEST_CASE("ell examples and monotonicity") {
    CHECK(ell(2) == 1);
    CHECK(ell(50) == 3);
    CHECK(ell(300) == 4);
    Natural previous = ell(2);
    for (Natural n = 3; n <= 1500; ++n) {
        const Natural cur = ell(n);
        REQUIRE(cur >= previous);
        previous = cur;
    }
}

TEST_CASE("run_census examples and brute-force agreement") {
    const auto c40 = run_census(40);
    CHECK(c40.size() == 3);
    CHECK(c40.at(1) == CensusEntry{1, 27});
    CHECK(c40.at(2) == CensusEntry{2, 5});
    CHECK(c40.at(3) == CensusEntry{33, 1});
    CHECK(run_census(2) == RunCensus{{1, {1, 2}}});
    CHECK(run_census(250).at(4) == CensusEntry{242, 1});

    for (Natural n : {2, 3, 17, 241, 242, 245, 246, 5000}) {
        const auto expected = oracle::census(oracle::runs_up_to(n));
        const auto got = run_census(n);
        REQUIRE(got.size() == expected.size());
        for (const auto& [len, fc] : expected) {
            REQUIRE(got.at(len).first_start == fc.first);
            REQUIRE(got.at(len).count == fc.second);
        }
    }
}

TEST_CASE("a run straddling N counts with its truncated length") {
    // 242..245 all have d = 6; cutting at 243 leaves a run of 2.
    CHECK(longest_run_up_to(243).first == RunRecord{33, 3, 4});
    const auto c = run_census(243);
    CHECK(c.at(2).count == oracle::census(oracle::runs_up_to(243)).at(2).second);
    ScanOptions o;
    o.n = 244;
    o.segment_width = 100;
    RunScan s = finished(o);
    CHECK(s.best() == RunRecord{33, 3, 4});
    o.n = 245;
    CHECK(finished(o).best() == RunRecord{242, 4, 6});
}

TEST_CASE("results do not depend on segment width or thread count") {
    ScanOptions base;
    base.n = 1'000'000;
    base.segment_width = 100'000;
    const RunScan reference = finished(base);
    for (Natural width : {1'000, 10'000, 100'000, 65'537, 1 << 20}) {
        for (unsigned threads : {1u, 3u}) {
            ScanOptions o = base;
            o.segment_width = width;
            o.threads = threads;
            const RunScan s = finished(o);
            REQUIRE(s.best() == reference.best());
            REQUIRE(s.milestones() == reference.milestones());
            REQUIRE(s.census() == reference.census());
        }
    }
    ScanOptions tiny;
    tiny.n = 3000;
    tiny.segment_width = 1;
    ScanOptions wide = tiny;
    wide.segment_width = 4096;
    CHECK(finished(tiny).census() == finished(wide).census());
}

TEST_CASE("visitor sees every maximal run in order") {
    ScanOptions o;
    o.n = 20000;
    o.segment_width = 777;
    RunScan s(o);
    std::vector<RunRecord> seen;
    s.set_visitor([&](const RunRecord& r) { seen.push_back(r); });
    s.run_to_completion();
    const auto expected = oracle::runs_up_to(20000);
    REQUIRE(seen.size() == expected.size());
    for (std::size_t i = 0; i < seen.size(); ++i) {
        REQUIRE(seen[i].start == expected[i].start);
        REQUIRE(seen[i].length == expected[i].length);
        REQUIRE(seen[i].divisor_count == expected[i].d);
    }
}

TEST_CASE("milestones are log spaced and end at N") {
    CHECK(milestone_points(1, 100) == std::vector<Natural>{100});
    CHECK(milestone_points(1, 99) == std::vector<Natural>{99});
    CHECK(milestone_points(1, 12345) == std::vector<Natural>{100, 1000, 10000, 12345});
    CHECK(milestone_points(500, 100000) == std::vector<Natural>{1000, 10000, 100000});
    ScanOptions o;
    o.n = 1'000'000;
    const RunScan s = finished(o);
    const auto& ms = s.milestones();
    REQUIRE(ms.size() == 5);
    CHECK(ms[0].best == RunRecord{33, 3, 4});
    CHECK(ms[1].best == RunRecord{242, 4, 6});
    CHECK(ms[3].best.start == 28374);
    CHECK(ms[3].best.length == 6);
    CHECK(ms[4].best == RunRecord{171893, 7, 8});
}

TEST_CASE("scan over an interior window") {
    ScanOptions o;
    o.lo = 171000;
    o.n = 172000;
    o.segment_width = 300;
    const RunScan s = finished(o);
    CHECK(s.best() == RunRecord{171893, 7, 8});
}

TEST_CASE("checkpoint round trip and resume at every boundary") {
    ScanOptions o;
    o.n = 200'000;
    o.segment_width = 10'000;
    const RunScan reference = finished(o);

    RunScan first(o);
    first.advance(1);
    SieveCheckpoint ck = decode_checkpoint(encode_checkpoint(first.checkpoint()));
    CHECK(ck == first.checkpoint());
    std::size_t resumes = 0;
    while (true) {
        RunScan s(o, ck);
        if (s.done()) {
            CHECK(s.best() == reference.best());
            CHECK(s.milestones() == reference.milestones());
            CHECK(s.census() == reference.census());
            break;
        }
        s.advance(1);
        ck = decode_checkpoint(encode_checkpoint(s.checkpoint()));
        ++resumes;
    }
    CHECK(resumes == 19);
    CHECK(longest_run_up_to(200'000, ck, o).first == reference.best());
}

TEST_CASE("checkpoint header and field layout") {
    ScanOptions o;
    o.n = 1000;
    o.segment_width = 100;
    RunScan s(o);
    s.advance(3);
    const std::string bytes = encode_checkpoint(s.checkpoint());
    REQUIRE(bytes.size() >= 4 + 7 * 8);
    CHECK(bytes.substr(0, 4) == "DRL1");
    auto field = [&](int i) {
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b) v |= std::uint64_t(static_cast<unsigned char>(bytes[4 + 8 * i + b])) << (8 * b);
        return v;
    };
    CHECK(field(0) == 301);  // next_lo
    CHECK(field(1) == s.checkpoint().best_run.start);
    CHECK(field(4) == s.checkpoint().carry_value);
    CHECK(field(6) == scan_config_hash(o));
}

TEST_CASE("checkpoint mismatch is refused") {
    ScanOptions o;
    o.n = 5000;
    o.segment_width = 1000;
    RunScan s(o);
    s.advance(2);
    const auto ck = s.checkpoint();

    auto expect_mismatch = [&](const ScanOptions& other, const SieveCheckpoint& c) {
        try {
            RunScan r(other, c);
            FAIL("mismatch accepted");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::checkpoint_mismatch);
        }
    };
    ScanOptions other_n = o;
    other_n.n = 6000;
    expect_mismatch(other_n, ck);
    ScanOptions other_w = o;
    other_w.segment_width = 500;
    expect_mismatch(other_w, ck);
    SieveCheckpoint tampered = ck;
    tampered.config_hash ^= 1;
    expect_mismatch(o, tampered);

    ScanOptions threads = o;
    threads.threads = 4;
    CHECK_NOTHROW(RunScan(threads, ck));

    std::string bytes = encode_checkpoint(ck);
    CHECK_THROWS_AS(decode_checkpoint(bytes.substr(0, bytes.size() - 3)), Error);
    bytes[0] = 'X';
    CHECK_THROWS_AS(decode_checkpoint(bytes), Error);
}

TEST_CASE("run divisibility holds for every run below 1e6") {
    ScanOptions o;
    o.n = 1'000'000;
    RunScan s(o);
    std::size_t checked = 0;
    s.set_visitor([&](const RunRecord& r) {
        if (r.length < 4) return;
        ++checked;
        REQUIRE(run_divisibility_holds(r));
    });
    s.run_to_completion();
    CHECK(checked > 100);
    CHECK(run_divisibility_holds({33, 3, 4}));
    CHECK(run_divisibility_holds({242, 4, 6}));
    CHECK_FALSE(run_divisibility_holds({1, 4, 5}));  // synthetic: 2 ∤ 5
}
