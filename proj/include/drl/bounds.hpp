#pragma once

#include <string>
#include <vector>

#include "drl/arith.hpp"
#include "drl/sieve.hpp"

namespace drl {

// Constants of the upper-bound expressions. Defaults were checked against
// the prime sums over the desk-scale range:
//   Σ_{p≤k} 1/p ≤ log log k + 1.1 for k ≥ 5,
//   log(log₂N + 1) ≤ 1.1·log log N for N ≥ 10^3,
//   C = 1.3 > max(√C2, C1·C2).
struct BoundParams {
    double c = 1.3;
    double c1 = 1.1;
    double c2 = 1.1;
    double eps = 0.0;

    void validate() const;
    // C > max(√C2, C1·C2), the regime where the factorial gap turns negative for large k.
    bool contradiction_regime() const;
    // 16 hex digits, stable across platforms (hashes the IEEE bit patterns).
    std::string digest() const;
};

// Relative slack for comparing an integer ℓ against a float bound.
inline constexpr double kBoundGuard = 1e-12;

// log(k/4)/(C2·log log N) − C1·log log k. Requires k > 4 and N > e.
double f_of_k(double k, double n, const BoundParams& params);

struct Eq3Gap {
    double gap = 0;  // log N − [f·log(k·f) − f]; negative means no run of length k fits below N
    double f = 0;
    bool vacuous = false;  // f ≤ 0: the factorial step gives nothing, gap = log N + |f|
};
Eq3Gap eq3_gap(double k, double n, const BoundParams& params);

double bound_theorem1(double n, const BoundParams& params);  // exp(C·√(log N·log log N))
double bound_explicit(double n, double eps);                  // exp(√((1/2+ε)·log N·log log N))
double bound_theorem2(double n, const BoundParams& params);  // exp(C·(log N·log log N)^{1/3})

bool within_bound(Natural ell, double bound);

struct BoundComparison {
    Natural n = 0;
    Natural ell = 0;
    double theorem1 = 0;
    double explicit_bound = 0;
    double theorem2 = 0;
    bool theorem1_ok = false;
    bool explicit_ok = false;
    bool theorem2_ok = false;
};

BoundComparison compare(Natural n, Natural ell, const BoundParams& params);
// Sieves [1, n] first.
BoundComparison compare(Natural n, const BoundParams& params, ScanOptions opts = {});
std::vector<BoundComparison> compare_milestones(const std::vector<Milestone>& milestones, const BoundParams& params);

// Where bound_theorem2 ≤ bound_explicit ≤ bound_theorem1 holds on a grid.
struct OrderingPoint {
    double n = 0;
    bool ordered = false;
};
struct OrderingReport {
    std::vector<OrderingPoint> grid;
    // Smallest N past which theorem2 ≤ explicit (C = 1, ε = 0), by bisection.
    double crossover_theorem2_explicit = 0;
};
OrderingReport bound_ordering(double decade_lo = 3, double decade_hi = 15, const BoundParams& params = {1.0, 1.1, 1.1, 0.0});

}  // namespace drl
