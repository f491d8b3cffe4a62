#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drl/arith.hpp"
#include "drl/bounds.hpp"
#include "drl/sieve.hpp"

namespace drl {

enum class LemmaId { L1, L2, L3, L4, L5, L6, EQ5, EQ8, RUNDIV };

std::string_view lemma_name(LemmaId id);
std::optional<LemmaId> parse_lemma(std::string_view name);
// Exact checkers can fail; L2–L5 are trend monitors and always pass.
bool lemma_is_exact(LemmaId id);
std::vector<LemmaId> all_lemmas();

// A counterexample, given by the inputs needed to recheck it with scalar calls.
struct Witness {
    std::vector<Natural> inputs;
    std::string detail;
};

struct TrendPoint {
    Natural n = 0;
    double value = 0;
    double residual = 0;
};

struct LemmaReport {
    LemmaId id = LemmaId::L1;
    Window range;
    std::vector<Witness> violations;
    double worst_residual = 0;
    std::string residual_description;
    std::uint64_t seed = 0;
    std::vector<TrendPoint> trend;
    // Free-form findings (e.g. equality cases, fitted constants).
    std::vector<std::pair<std::string, std::string>> notes;

    bool pass() const noexcept { return violations.empty(); }
};

std::string lemma_report_json(const LemmaReport& report);

// lcm(1..n+1) ≥ 2^n for 1 ≤ n ≤ n_max, exact.
LemmaReport check_lemma1(Natural n_max);

double mertens_sum(const PrimeTable& table, Natural n);
double mertens_sum(Natural n);
double chebyshev_theta(const PrimeTable& table, Natural n);
double chebyshev_theta(Natural n);
double sum_inv_log_p(const PrimeTable& table, Natural n);
double sum_inv_log_p(Natural n);
Uint128 sum_primes(const PrimeTable& table, Natural n);
Uint128 sum_primes(Natural n);

// n = 10^a for a on a half-decade grid, clipped to [lo, hi].
std::vector<Natural> log_grid(Natural lo, Natural hi);

// Σ1/p − log log n on a log grid. M is estimated as the median over the
// plateau n ∈ [10^4, hi]; c in tol(n) = c/log n is fitted on [10^3, 10^6]
// and then tested on (10^6, hi].
struct MertensFit {
    double m_estimate = 0;
    Natural plateau_lo = 0;
    Natural plateau_hi = 0;
    double c = 0;
    bool tolerance_holds = true;
    std::vector<TrendPoint> trend;
};
MertensFit fit_mertens(const PrimeTable& table, Natural hi);

LemmaReport monitor_lemma2(Natural n_max);
LemmaReport monitor_lemma3(Natural n_max);
LemmaReport monitor_lemma4(Natural n_max);
LemmaReport monitor_lemma5(Natural n_max);

struct Lemma6Check {
    double lhs = 0;  // log n / log p_min
    Natural rhs = 0; // Σ (p−1)·ν_p(d(n))
    bool pass = false;
    bool equality = false;
};
// Float comparison with a 1e-9 relative guard; cases inside the guard are
// settled exactly by testing p_min^rhs ≤ n.
Lemma6Check check_lemma6(Natural n);
Lemma6Check check_lemma6(Natural n, Natural divisor_count, Natural p_min);
LemmaReport check_lemma6_range(Natural n_max, unsigned threads = 1);

struct Eq8Check {
    Natural lhs = 0;
    Natural rhs = 0;
    bool pass = false;
};
Eq8Check check_eq8(Natural k);
LemmaReport check_eq8_range(Natural k_max);

struct Eq5Check {
    Natural lhs = 0;
    double rhs = 0;
    bool pass = false;
};
// Σ ν_p(lo+i) over the window < log N/log p + k/(p−1), where k is the width.
Eq5Check check_eq5(Natural p, Window window, Natural n);
LemmaReport check_eq5_random(std::size_t trials, std::uint64_t seed);

// lcm(1..⌊log₂k⌋) | D for every maximal run of length k ≥ 2 in [1, N].
bool run_divisibility_holds(const RunRecord& run);
LemmaReport check_run_divisibility(Natural n, ScanOptions opts = {});

struct VerifyOptions {
    std::optional<Natural> max;  // per-lemma default when absent
    std::uint64_t seed = 20240601;
    unsigned threads = 1;
    Natural segment_width = kDefaultSegmentWidth;
    std::size_t eq5_trials = 10'000;
};
Natural default_range(LemmaId id);
LemmaReport run_lemma(LemmaId id, const VerifyOptions& opts);

}  // namespace drl
