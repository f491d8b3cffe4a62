#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace drl {

using Natural = std::uint64_t;
using BigNatural = mpz_class;
using Uint128 = unsigned __int128;

struct PrimePower {
    Natural prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Ascending by prime; empty for n = 1.
using Factorization = std::vector<PrimePower>;

// Primes up to a limit together with prefix sums at each prime index, so
// that Σ1/p, Σ1/log p, Σp and θ over p ≤ x are a binary search away.
class PrimeTable {
public:
    explicit PrimeTable(Natural limit);

    Natural limit() const noexcept { return limit_; }
    std::span<const Natural> primes() const noexcept { return primes_; }
    std::size_t size() const noexcept { return primes_.size(); }

    // π(x) for x ≤ limit().
    std::size_t pi(Natural x) const;
    bool contains(Natural x) const;

    double sum_reciprocal(Natural x) const;
    double sum_inv_log(Natural x) const;
    double theta(Natural x) const;
    Uint128 sum_primes(Natural x) const;

private:
    Natural limit_;
    std::vector<Natural> primes_;
    std::vector<double> sum_reciprocal_;
    std::vector<double> sum_inv_log_;
    std::vector<double> sum_log_;
    std::vector<Uint128> sum_primes_;
};

PrimeTable primes_up_to(Natural limit);

// Shared table used by scalar factorization; covers inputs up to 10^12 by
// trial division alone. Larger inputs fall back to an odd-number wheel.
const PrimeTable& small_primes();

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(Natural n);

Factorization factorize(Natural n);
Natural divisor_count(Natural n);
Natural divisor_count(const Factorization& f);
Natural omega(Natural n);
Natural big_omega(Natural n);
Natural nu(Natural p, Natural n);
Natural smallest_prime_factor(Natural n);

BigNatural primorial(Natural n);
BigNatural lcm_range(Natural n);

// Largest K with 2^K ≤ k, for k ≥ 1.
unsigned floor_log2(Natural k);

Natural isqrt(Natural n);

}  // namespace drl
