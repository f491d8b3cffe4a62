#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "drl/arith.hpp"

namespace drl {

// Half-open interval [lo, hi) of positive integers.
struct Window {
    Natural lo = 1;
    Natural hi = 2;

    Natural width() const noexcept { return hi - lo; }
    void validate() const;
};

// A maximal block of consecutive integers sharing one divisor count.
struct RunRecord {
    Natural start = 0;
    Natural length = 0;
    Natural divisor_count = 0;

    Natural end() const noexcept { return start + length; }
    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline constexpr Natural kDefaultSegmentWidth = Natural{1} << 20;
inline constexpr Natural kDefaultWindowCapacity = Natural{1} << 26;

// Bulk d(n) over a window without per-integer factorization. For each prime
// p ≤ √(hi−1) every power p^t is stride-marked; a per-entry product of the
// extracted prime powers tells whether one large prime cofactor is left.
// Scratch buffers are reused across calls, so one instance per thread.
class DivisorSieve {
public:
    explicit DivisorSieve(Natural capacity = kDefaultWindowCapacity);

    Natural capacity() const noexcept { return capacity_; }

    void run(Window w, std::span<std::uint32_t> out);
    std::vector<std::uint32_t> operator()(Window w);

private:
    void ensure_primes(Natural root);

    Natural capacity_;
    Natural primes_limit_ = 0;
    std::vector<Natural> primes_;
    std::vector<std::uint32_t> prod32_;
    std::vector<std::uint64_t> prod64_;
};

// Throws ErrorCode::capacity when the window is wider than `capacity`.
std::vector<std::uint32_t> sieve_divisor_counts(Window w, Natural capacity = kDefaultWindowCapacity);

struct ScanOptions {
    Natural n = 0;   // last integer scanned (inclusive)
    Natural lo = 1;  // first integer scanned
    Natural segment_width = kDefaultSegmentWidth;
    unsigned threads = 1;
};

struct Milestone {
    Natural n = 0;
    RunRecord best;

    friend bool operator==(const Milestone&, const Milestone&) = default;
};

struct CensusEntry {
    Natural first_start = 0;
    Natural count = 0;

    friend bool operator==(const CensusEntry&, const CensusEntry&) = default;
};

// run length -> earliest start and number of maximal runs of exactly that length
using RunCensus = std::map<Natural, CensusEntry>;

struct SieveCheckpoint {
    Natural next_lo = 0;
    RunRecord best_run;
    Natural carry_value = 0;
    Natural carry_length = 0;
    std::uint64_t config_hash = 0;

    // Everything below is needed to reproduce reports after a resume.
    Natural scan_lo = 1;
    Natural scan_n = 0;
    std::vector<Milestone> milestones;
    RunCensus census;  // completed runs only; the carry is not counted

    friend bool operator==(const SieveCheckpoint&, const SieveCheckpoint&) = default;
};

using RunVisitor = std::function<void(const RunRecord&)>;

// N = 10^2, 10^3, ... inside [lo, n], then n itself.
std::vector<Natural> milestone_points(Natural lo, Natural n);

std::uint64_t scan_config_hash(const ScanOptions& opts);

// Segmented scan for maximal runs of equal d(n) over [lo, n]. Segments of a
// batch are sieved concurrently; runs are merged by an in-order fold that
// carries the run in progress across segment boundaries. A run still open at
// n is counted with its truncated length.
class RunScan {
public:
    explicit RunScan(const ScanOptions& opts);
    // Throws ErrorCode::checkpoint_mismatch when the checkpoint was written
    // for a different configuration.
    RunScan(const ScanOptions& opts, const SieveCheckpoint& resume_from);

    void set_visitor(RunVisitor visitor) { visitor_ = std::move(visitor); }

    // Processes at most `max_segments` segments; returns how many ran.
    std::size_t advance(std::size_t max_segments = SIZE_MAX);
    void run_to_completion() { advance(); }

    bool done() const noexcept { return next_lo_ > opts_.n; }
    Natural next_lo() const noexcept { return next_lo_; }
    const ScanOptions& options() const noexcept { return opts_; }
    std::uint64_t config_hash() const noexcept { return hash_; }

    // Longest run seen so far, counting the open run truncated at next_lo − 1.
    RunRecord best() const;
    const std::vector<Milestone>& milestones() const noexcept { return milestones_; }
    // Census over everything scanned; once done() it includes the final run.
    RunCensus census() const;
    SieveCheckpoint checkpoint() const;

private:
    void fold(Natural lo, std::span<const std::uint32_t> d);
    void close_run(Natural end);
    RunRecord open_run() const;

    ScanOptions opts_;
    std::uint64_t hash_;
    Natural next_lo_;
    RunRecord best_;
    Natural carry_value_ = 0;
    Natural carry_length_ = 0;
    std::vector<CensusEntry> census_;
    std::vector<Milestone> milestones_;
    std::vector<Natural> milestone_points_;
    std::size_t next_milestone_ = 0;
    bool final_emitted_ = false;
    RunVisitor visitor_;
    std::vector<DivisorSieve> sieves_;
    std::vector<std::vector<std::uint32_t>> buffers_;
};

std::pair<RunRecord, SieveCheckpoint> longest_run_up_to(Natural n, const std::optional<SieveCheckpoint>& checkpoint = std::nullopt,
                                                        ScanOptions opts = {});
Natural ell(Natural n, ScanOptions opts = {});
RunCensus run_census(Natural n, ScanOptions opts = {});

// Binary checkpoint: "DRL1", then little-endian u64 fields in declared order,
// then the extension block.
std::string encode_checkpoint(const SieveCheckpoint& ck);
SieveCheckpoint decode_checkpoint(std::string_view bytes);
void write_checkpoint(const SieveCheckpoint& ck, const std::string& path);
SieveCheckpoint read_checkpoint(const std::string& path);

}  // namespace drl
