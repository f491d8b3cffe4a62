#include "drl/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drl/error.hpp"
#include "parallel.hpp"

namespace drl {

namespace {

template <class Prod>
void sieve_segment(Natural lo, Natural hi, std::span<const Natural> primes, std::uint32_t* d, Prod* prod) {
    const Natural width = hi - lo;
    const Natural top = hi - 1;
    std::fill(d, d + width, 1u);
    std::fill(prod, prod + width, Prod{1});

    for (const Natural p : primes) {
        if (p > top / p) break;
        const auto pp = static_cast<Prod>(p);
        Natural q = p;
        for (std::uint32_t t = 1;; ++t) {
            Natural x = (lo + q - 1) / q * q - lo;
            if (t == 1) {
                for (; x < width; x += q) {
                    d[x] <<= 1;
                    prod[x] *= pp;
                }
            } else {
                // d[x] already holds the factor t from p^(t-1); swap it for t+1.
                const std::uint32_t next = t + 1;
                for (; x < width; x += q) {
                    d[x] = d[x] / t * next;
                    prod[x] *= pp;
                }
            }
            if (q > top / p) break;
            q *= p;
        }
    }
    for (Natural i = 0; i < width; ++i)
        if (prod[i] != static_cast<Prod>(lo + i)) d[i] <<= 1;
}

}  // namespace

void Window::validate() const {
    if (lo < 1) fail(ErrorCode::domain, "window: lo must be >= 1");
    if (hi <= lo) fail(ErrorCode::domain, "window: hi must exceed lo");
}

DivisorSieve::DivisorSieve(Natural capacity) : capacity_(capacity) {
    if (capacity == 0) fail(ErrorCode::invalid_argument, "DivisorSieve: capacity must be positive");
}

void DivisorSieve::ensure_primes(Natural root) {
    if (root <= primes_limit_ && primes_limit_ >= 2) return;
    const Natural limit = std::max<Natural>({root, 2, primes_limit_ * 2});
    const PrimeTable table(limit);
    primes_.assign(table.primes().begin(), table.primes().end());
    primes_limit_ = limit;
}

void DivisorSieve::run(Window w, std::span<std::uint32_t> out) {
    w.validate();
    if (w.width() > capacity_)
        fail(ErrorCode::capacity, "sieve window width " + std::to_string(w.width()) + " exceeds segment capacity " +
                                      std::to_string(capacity_));
    if (out.size() != w.width()) fail(ErrorCode::invalid_argument, "sieve output span does not match window width");
    ensure_primes(isqrt(w.hi - 1));
    if (w.hi - 1 <= 0xFFFFFFFFull) {
        if (prod32_.size() < w.width()) prod32_.resize(w.width());
        sieve_segment<std::uint32_t>(w.lo, w.hi, primes_, out.data(), prod32_.data());
    } else {
        if (prod64_.size() < w.width()) prod64_.resize(w.width());
        sieve_segment<std::uint64_t>(w.lo, w.hi, primes_, out.data(), prod64_.data());
    }
}

std::vector<std::uint32_t> DivisorSieve::operator()(Window w) {
    w.validate();
    if (w.width() > capacity_)
        fail(ErrorCode::capacity, "sieve window width " + std::to_string(w.width()) + " exceeds segment capacity " +
                                      std::to_string(capacity_));
    std::vector<std::uint32_t> out(w.width());
    run(w, out);
    return out;
}

std::vector<std::uint32_t> sieve_divisor_counts(Window w, Natural capacity) { return DivisorSieve(capacity)(w); }

std::vector<Natural> milestone_points(Natural lo, Natural n) {
    std::vector<Natural> out;
    for (Natural p = 100; p <= n; p *= 10) {
        if (p >= lo) out.push_back(p);
        if (p > n / 10) break;
    }
    if (out.empty() || out.back() != n) out.push_back(n);
    return out;
}

std::uint64_t scan_config_hash(const ScanOptions& opts) {
    // FNV-1a over the fields that determine segment boundaries and output.
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xFF;
            h *= 0x100000001b3ull;
        }
    };
    mix(0x314C5244);  // "DRL1"
    mix(opts.lo);
    mix(opts.n);
    mix(opts.segment_width);
    return h;
}

namespace {

void validate_options(const ScanOptions& opts) {
    if (opts.lo < 1) fail(ErrorCode::domain, "scan: lo must be >= 1");
    if (opts.n < 2 || opts.n < opts.lo) fail(ErrorCode::domain, "scan: N must be >= 2 and >= lo");
    if (opts.n == ~Natural{0}) fail(ErrorCode::domain, "scan: N too large");
    if (opts.segment_width == 0 || opts.segment_width > kDefaultWindowCapacity)
        fail(ErrorCode::capacity, "scan: segment width must be in [1, " + std::to_string(kDefaultWindowCapacity) + "]");
}

}  // namespace

RunScan::RunScan(const ScanOptions& opts)
    : opts_(opts), hash_(0), next_lo_(opts.lo), milestone_points_() {
    validate_options(opts_);
    if (opts_.threads == 0) opts_.threads = 1;
    hash_ = scan_config_hash(opts_);
    milestone_points_ = milestone_points(opts_.lo, opts_.n);
}

RunScan::RunScan(const ScanOptions& opts, const SieveCheckpoint& ck) : RunScan(opts) {
    if (ck.config_hash != hash_ || ck.scan_lo != opts_.lo || ck.scan_n != opts_.n)
        fail(ErrorCode::checkpoint_mismatch, "checkpoint was written for a different scan configuration");
    if (ck.next_lo < opts_.lo || ck.next_lo > opts_.n + 1 || ck.carry_length > ck.next_lo - opts_.lo)
        fail(ErrorCode::checkpoint_mismatch, "checkpoint position is inconsistent with the configuration");
    next_lo_ = ck.next_lo;
    best_ = ck.best_run;
    carry_value_ = ck.carry_value;
    carry_length_ = ck.carry_length;
    milestones_ = ck.milestones;
    for (const auto& [len, entry] : ck.census) {
        if (census_.size() <= len) census_.resize(len + 1);
        census_[len] = entry;
    }
    next_milestone_ = milestones_.size();
    if (next_milestone_ > milestone_points_.size())
        fail(ErrorCode::checkpoint_mismatch, "checkpoint milestone table is inconsistent with the configuration");
}

RunRecord RunScan::open_run() const {
    if (carry_length_ == 0) return {};
    return {next_lo_ - carry_length_, carry_length_, carry_value_};
}

RunRecord RunScan::best() const {
    const RunRecord open = open_run();
    return open.length > best_.length ? open : best_;
}

RunCensus RunScan::census() const {
    RunCensus out;
    for (Natural len = 0; len < census_.size(); ++len)
        if (census_[len].count) out[len] = census_[len];
    if (done() && carry_length_) {
        auto& e = out[carry_length_];
        if (e.count == 0 || next_lo_ - carry_length_ < e.first_start) e.first_start = next_lo_ - carry_length_;
        ++e.count;
    }
    return out;
}

SieveCheckpoint RunScan::checkpoint() const {
    SieveCheckpoint ck;
    ck.next_lo = next_lo_;
    ck.best_run = best_;
    ck.carry_value = carry_value_;
    ck.carry_length = carry_length_;
    ck.config_hash = hash_;
    ck.scan_lo = opts_.lo;
    ck.scan_n = opts_.n;
    ck.milestones = milestones_;
    for (Natural len = 0; len < census_.size(); ++len)
        if (census_[len].count) ck.census[len] = census_[len];
    return ck;
}

void RunScan::close_run(Natural end) {
    const RunRecord run{end - carry_length_, carry_length_, carry_value_};
    if (census_.size() <= run.length) census_.resize(run.length + 1);
    auto& e = census_[run.length];
    if (e.count++ == 0) e.first_start = run.start;
    if (run.length > best_.length) best_ = run;
    if (visitor_) visitor_(run);
}

void RunScan::fold(Natural lo, std::span<const std::uint32_t> d) {
    std::size_t i = 0;
    while (i < d.size()) {
        // Fold up to the next milestone (inclusive) or the end of the segment.
        std::size_t stop = d.size();
        const bool at_milestone =
            next_milestone_ < milestone_points_.size() && milestone_points_[next_milestone_] < lo + d.size();
        if (at_milestone) stop = milestone_points_[next_milestone_] - lo + 1;

        Natural value = carry_value_;
        Natural length = carry_length_;
        for (; i < stop; ++i) {
            if (length && d[i] == value) {
                ++length;
                continue;
            }
            if (length) {
                carry_value_ = value;
                carry_length_ = length;
                close_run(lo + i);
            }
            value = d[i];
            length = 1;
        }
        carry_value_ = value;
        carry_length_ = length;
        next_lo_ = lo + stop;

        if (at_milestone) {
            milestones_.push_back({milestone_points_[next_milestone_], best()});
            ++next_milestone_;
        }
    }
}

std::size_t RunScan::advance(std::size_t max_segments) {
    const unsigned threads = std::max(1u, opts_.threads);
    if (sieves_.size() < threads) {
        sieves_.resize(threads);
        buffers_.resize(threads);
    }
    std::size_t processed = 0;
    while (!done() && processed < max_segments) {
        // Segment boundaries are fixed at lo + s·width, independent of batching.
        std::vector<Window> batch;
        Natural lo = next_lo_;
        while (batch.size() < threads && processed + batch.size() < max_segments && lo <= opts_.n) {
            const Natural aligned = opts_.lo + (lo - opts_.lo) / opts_.segment_width * opts_.segment_width;
            const Natural hi = std::min(opts_.n + 1, aligned + opts_.segment_width);
            batch.push_back({lo, hi});
            lo = hi;
        }
        for (std::size_t b = 0; b < batch.size(); ++b) buffers_[b].resize(batch[b].width());
        detail::parallel_for(batch.size(), threads, [&](std::size_t task, std::size_t) {
            sieves_[task].run(batch[task], buffers_[task]);
        });
        for (std::size_t b = 0; b < batch.size(); ++b) fold(batch[b].lo, buffers_[b]);
        processed += batch.size();
    }
    if (done() && !final_emitted_ && processed > 0) {
        final_emitted_ = true;
        if (visitor_ && carry_length_) visitor_(open_run());
    }
    return processed;
}

std::pair<RunRecord, SieveCheckpoint> longest_run_up_to(Natural n, const std::optional<SieveCheckpoint>& checkpoint,
                                                        ScanOptions opts) {
    opts.n = n;
    opts.lo = 1;
    RunScan scan = checkpoint ? RunScan(opts, *checkpoint) : RunScan(opts);
    scan.run_to_completion();
    return {scan.best(), scan.checkpoint()};
}

Natural ell(Natural n, ScanOptions opts) { return longest_run_up_to(n, std::nullopt, opts).first.length; }

RunCensus run_census(Natural n, ScanOptions opts) {
    opts.n = n;
    opts.lo = 1;
    RunScan scan(opts);
    scan.run_to_completion();
    return scan.census();
}

}  // namespace drl
