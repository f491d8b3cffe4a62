#pragma once

// Brute-force reference implementations. Nothing here calls into the
// library; each routine uses the most direct method available.

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline u64 divisor_count(u64 n) {
    u64 c = 0;
    for (u64 i = 1; i * i <= n; ++i)
        if (n % i == 0) c += (i * i == n) ? 1 : 2;
    return c;
}

inline std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> f;
    for (u64 p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.push_back({p, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// d(1..n) by counting each divisor once per multiple; index 0 unused.
inline std::vector<u64> divisor_counts_by_multiples(u64 n) {
    std::vector<u64> d(n + 1, 0);
    for (u64 i = 1; i <= n; ++i)
        for (u64 j = i; j <= n; j += i) ++d[j];
    return d;
}

struct Run {
    u64 start, length, d;
};

// Maximal runs of equal values in d[1..n].
inline std::vector<Run> runs_from(const std::vector<u64>& d) {
    const u64 n = d.size() - 1;
    std::vector<Run> out;
    for (u64 i = 1; i <= n;) {
        u64 j = i;
        while (j + 1 <= n && d[j + 1] == d[i]) ++j;
        out.push_back({i, j - i + 1, d[i]});
        i = j + 1;
    }
    return out;
}

// Runs within [1, n] with d from trial division.
inline std::vector<Run> runs_up_to(u64 n) {
    std::vector<u64> d(n + 1);
    for (u64 i = 1; i <= n; ++i) d[i] = divisor_count(i);
    return runs_from(d);
}

// Earliest start and count of maximal runs per exact length.
inline std::map<u64, std::pair<u64, u64>> census(const std::vector<Run>& runs) {
    std::map<u64, std::pair<u64, u64>> out;
    for (const auto& r : runs) {
        auto [it, inserted] = out.try_emplace(r.length, r.start, 0);
        ++it->second.second;
    }
    return out;
}

// j(m) by gcd over one period plus the wrap: the largest difference between
// consecutive integers in [1, m+1] coprime to m.
inline std::pair<u64, u64> jacobsthal_gcd(u64 m) {
    u64 best = 0, start = 0, last = 0;
    for (u64 x = 1; x <= m + 1; ++x) {
        if (std::gcd(x, m) != 1) continue;
        if (last && x - last > best) {
            best = x - last;
            start = last + 1;
        }
        last = x;
    }
    return {best, start};
}

inline u64 lcm_iterative(u64 n) {
    u64 l = 1;
    for (u64 i = 2; i <= n; ++i) l = std::lcm(l, i);
    return l;
}

}  // namespace oracle
