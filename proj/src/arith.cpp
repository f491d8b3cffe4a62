#include "drl/arith.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drl/error.hpp"

namespace drl {

namespace {

void require_positive(Natural n, const char* what) {
    if (n == 0) fail(ErrorCode::domain, std::string(what) + ": n must be >= 1");
}

// Odd-only segmented sieve of Eratosthenes over [3, limit].
std::vector<Natural> sieve_primes(Natural limit) {
    std::vector<Natural> out;
    if (limit < 2) return out;
    out.push_back(2);
    if (limit < 3) return out;

    const Natural root = isqrt(limit);
    std::vector<Natural> base;
    {
        std::vector<char> composite(root + 1, 0);
        for (Natural i = 3; i <= root; i += 2) {
            if (composite[i]) continue;
            base.push_back(i);
            for (Natural j = i * i; j <= root; j += 2 * i) composite[j] = 1;
        }
    }

    constexpr Natural kSegment = Natural{1} << 18;  // odd numbers per segment
    std::vector<char> composite(kSegment);
    std::vector<Natural> next(base.size());
    for (std::size_t b = 0; b < base.size(); ++b) next[b] = base[b] * base[b];

    out.reserve(static_cast<std::size_t>(1.1 * limit / std::max(1.0, std::log(double(limit)))));
    for (Natural lo = 3; lo <= limit; lo += 2 * kSegment) {
        const Natural hi = std::min(limit, lo + 2 * kSegment - 1);  // inclusive
        const Natural count = (hi - lo) / 2 + 1;
        std::fill(composite.begin(), composite.begin() + count, 0);
        for (std::size_t b = 0; b < base.size(); ++b) {
            const Natural p = base[b];
            Natural m = next[b];
            for (; m <= hi; m += 2 * p) composite[(m - lo) / 2] = 1;
            next[b] = m;
        }
        for (Natural i = 0; i < count; ++i)
            if (!composite[i]) out.push_back(lo + 2 * i);
    }
    return out;
}

Natural mulmod(Natural a, Natural b, Natural m) { return Natural(Uint128(a) * b % m); }

Natural powmod(Natural base, Natural exp, Natural m) {
    Natural r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace

Natural isqrt(Natural n) {
    auto r = static_cast<Natural>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (r > 0xFFFFFFFFull || r * r > n)) --r;
    while (r < 0xFFFFFFFFull && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

unsigned floor_log2(Natural k) {
    if (k == 0) fail(ErrorCode::domain, "floor_log2: k must be >= 1");
    auto K = static_cast<unsigned>(std::floor(std::log(double(k)) / std::log(2.0)));
    // The float quotient may fall on either side of an exact power of two.
    while (K > 0 && (K >= 64 || (Natural{1} << K) > k)) --K;
    while (K + 1 < 64 && (Natural{1} << (K + 1)) <= k) ++K;
    return K;
}

PrimeTable::PrimeTable(Natural limit) : limit_(limit) {
    if (limit < 2) fail(ErrorCode::domain, "primes_up_to: limit must be >= 2");
    primes_ = sieve_primes(limit);
    const std::size_t n = primes_.size();
    sum_reciprocal_.resize(n);
    sum_inv_log_.resize(n);
    sum_log_.resize(n);
    sum_primes_.resize(n);
    long double r = 0, il = 0, lg = 0;
    Uint128 s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = static_cast<long double>(primes_[i]);
        const long double lp = std::log(p);
        r += 1.0L / p;
        il += 1.0L / lp;
        lg += lp;
        s += primes_[i];
        sum_reciprocal_[i] = static_cast<double>(r);
        sum_inv_log_[i] = static_cast<double>(il);
        sum_log_[i] = static_cast<double>(lg);
        sum_primes_[i] = s;
    }
}

std::size_t PrimeTable::pi(Natural x) const {
    if (x > limit_) fail(ErrorCode::domain, "PrimeTable: query " + std::to_string(x) + " beyond limit " + std::to_string(limit_));
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

bool PrimeTable::contains(Natural x) const { return x <= limit_ && std::binary_search(primes_.begin(), primes_.end(), x); }

double PrimeTable::sum_reciprocal(Natural x) const {
    const auto k = pi(x);
    return k ? sum_reciprocal_[k - 1] : 0.0;
}

double PrimeTable::sum_inv_log(Natural x) const {
    const auto k = pi(x);
    return k ? sum_inv_log_[k - 1] : 0.0;
}

double PrimeTable::theta(Natural x) const {
    const auto k = pi(x);
    return k ? sum_log_[k - 1] : 0.0;
}

Uint128 PrimeTable::sum_primes(Natural x) const {
    const auto k = pi(x);
    return k ? sum_primes_[k - 1] : 0;
}

PrimeTable primes_up_to(Natural limit) { return PrimeTable(limit); }

const PrimeTable& small_primes() {
    static const PrimeTable table(1'000'000);
    return table;
}

bool is_prime(Natural n) {
    if (n < 2) return false;
    for (Natural p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Natural d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (Natural a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Natural x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

Factorization factorize(Natural n) {
    require_positive(n, "factorize");
    Factorization f;
    auto take = [&](Natural p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.push_back({p, e});
    };
    for (Natural p : small_primes().primes()) {
        if (p * p > n) break;
        take(p);
    }
    Natural p = small_primes().limit() + 1;
    if (p % 2 == 0) ++p;
    bool settled = n == 1 || is_prime(n);
    while (!settled && p <= n / p) {
        if (n % p == 0) {
            take(p);
            settled = n == 1 || is_prime(n);
        }
        p += 2;
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

Natural divisor_count(const Factorization& f) {
    Natural d = 1;
    for (const auto& pe : f) d *= pe.exponent + 1;
    return d;
}

Natural divisor_count(Natural n) { return divisor_count(factorize(n)); }

Natural omega(Natural n) { return factorize(n).size(); }

Natural big_omega(Natural n) {
    Natural total = 0;
    for (const auto& pe : factorize(n)) total += pe.exponent;
    return total;
}

Natural nu(Natural p, Natural n) {
    require_positive(n, "nu");
    if (!is_prime(p)) fail(ErrorCode::invalid_argument, "nu: p = " + std::to_string(p) + " is not prime");
    Natural e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

Natural smallest_prime_factor(Natural n) {
    if (n < 2) fail(ErrorCode::domain, "smallest_prime_factor: n must be >= 2");
    return factorize(n).front().prime;
}

BigNatural primorial(Natural n) {
    if (n < 2) fail(ErrorCode::domain, "primorial: n must be >= 2");
    BigNatural out = 1;
    const PrimeTable table = primes_up_to(n);
    for (Natural p : table.primes()) out *= static_cast<unsigned long>(p);
    return out;
}

BigNatural lcm_range(Natural n) {
    require_positive(n, "lcm_range");
    BigNatural out = 1;
    if (n < 2) return out;
    const PrimeTable table = primes_up_to(n);
    for (Natural p : table.primes()) {
        Natural pk = p;
        while (pk <= n / p) pk *= p;
        out *= static_cast<unsigned long>(pk);
    }
    return out;
}

}  // namespace drl
