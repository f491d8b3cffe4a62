#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drl/arith.hpp"
#include "drl/lemmas.hpp"
#include "drl/sieve.hpp"

namespace drl {

// j(modulus) for a squarefree modulus given by its prime support, with the
// earliest maximal stretch of j − 1 integers in [1, modulus] none of which is
// coprime to the modulus.
struct CoprimeGapProfile {
    BigNatural modulus;
    std::vector<Natural> prime_support;
    Natural j_value = 0;
    Natural witness_gap_start = 0;
};

inline constexpr Natural kDefaultJacobsthalBudget = 200'000'000;

struct JacobsthalOptions {
    Natural budget = kDefaultJacobsthalBudget;  // max modulus, i.e. residues per period
    unsigned threads = 1;
    Natural chunk = Natural{1} << 20;
};

// Marks every multiple of a support prime across one period (plus the wrap
// element modulus+1 ≡ 1) chunk by chunk, keeping only (first, last, widest
// gap) per chunk; chunks are merged in ascending order.
// Throws ErrorCode::budget when the modulus exceeds opts.budget.
CoprimeGapProfile jacobsthal_exact(std::span<const Natural> prime_support, const JacobsthalOptions& opts = {});
CoprimeGapProfile jacobsthal_primorial(Natural m, const JacobsthalOptions& opts = {});

// Least element of the window coprime to M#, i.e. with smallest prime factor > M.
std::optional<Natural> coprime_witness(Window window, Natural m);

struct JacobsthalRow {
    Natural m = 0;
    CoprimeGapProfile profile;
};

struct JacobsthalTable {
    std::vector<JacobsthalRow> rows;  // one per prime M, ascending
    bool truncated = false;           // rows stop early because of the budget
};

// Rows for every prime M ≤ max_m. Without `truncate`, an M over budget throws.
JacobsthalTable jacobsthal_table(Natural max_m, const JacobsthalOptions& opts = {}, bool truncate = false);
// All primorials within the default budget, built once.
const JacobsthalTable& default_jacobsthal_table();
std::string jacobsthal_table_csv(const JacobsthalTable& table);

struct MSelection {
    Natural m = 0;
    Natural j = 0;
    bool table_limited = false;  // every row qualified; the true M may be larger
};
MSelection largest_m_with_j_at_most(Natural k, const JacobsthalTable& table);
MSelection largest_m_with_j_at_most(Natural k);

// The run-to-prime-factor chain for one run of length k: pick M with j(M#) ≤ k,
// take the first run element with smallest prime factor > M, check the Ω bound
// there and that every prime ≤ log₂k divides its divisor count.
struct PipelineCheck {
    RunRecord run;
    MSelection selection;
    std::optional<Natural> witness;
    Natural p_min = 0;
    Lemma6Check lemma6;
    std::vector<Natural> primes_not_dividing_d;  // should stay empty

    bool ok() const { return witness && lemma6.pass && primes_not_dividing_d.empty(); }
};
PipelineCheck check_pipeline(const RunRecord& run, const JacobsthalTable& table = default_jacobsthal_table());

}  // namespace drl
