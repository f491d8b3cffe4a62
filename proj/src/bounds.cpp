#include "drl/bounds.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "drl/error.hpp"

namespace drl {

namespace {

double loglog_checked(double n, const char* what) {
    if (!(n > std::numbers::e)) fail(ErrorCode::domain, std::string(what) + ": N must exceed e");
    return std::log(std::log(n));
}

}  // namespace

void BoundParams::validate() const {
    if (!(c > 0) || !(c1 > 0) || !(c2 > 0)) fail(ErrorCode::domain, "bound params: C, C1, C2 must be positive");
    if (!(eps >= 0)) fail(ErrorCode::domain, "bound params: eps must be nonnegative");
}

bool BoundParams::contradiction_regime() const { return c > std::max(std::sqrt(c2), c1 * c2); }

std::string BoundParams::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (double v : {c, c1, c2, eps}) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xFF;
            h *= 0x100000001b3ull;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double f_of_k(double k, double n, const BoundParams& params) {
    params.validate();
    if (!(k > 4)) fail(ErrorCode::domain, "f_of_k: k must exceed 4");
    const double lln = loglog_checked(n, "f_of_k");
    return std::log(k / 4) / (params.c2 * lln) - params.c1 * std::log(std::log(k));
}

Eq3Gap eq3_gap(double k, double n, const BoundParams& params) {
    Eq3Gap out;
    out.f = f_of_k(k, n, params);
    const double log_n = std::log(n);
    if (out.f <= 0) {
        out.vacuous = true;
        out.gap = log_n + std::fabs(out.f);
        return out;
    }
    out.gap = log_n - (out.f * std::log(k * out.f) - out.f);
    return out;
}

double bound_theorem1(double n, const BoundParams& params) {
    params.validate();
    const double lln = loglog_checked(n, "bound_theorem1");
    return std::exp(params.c * std::sqrt(std::log(n) * lln));
}

double bound_explicit(double n, double eps) {
    if (!(eps >= 0)) fail(ErrorCode::domain, "bound_explicit: eps must be nonnegative");
    const double lln = loglog_checked(n, "bound_explicit");
    return std::exp(std::sqrt((0.5 + eps) * std::log(n) * lln));
}

double bound_theorem2(double n, const BoundParams& params) {
    params.validate();
    const double lln = loglog_checked(n, "bound_theorem2");
    return std::exp(params.c * std::cbrt(std::log(n) * lln));
}

bool within_bound(Natural ell, double bound) { return static_cast<double>(ell) <= bound * (1 + kBoundGuard); }

BoundComparison compare(Natural n, Natural ell, const BoundParams& params) {
    if (n < 16) fail(ErrorCode::domain, "compare: N must be >= 16");
    BoundComparison out;
    out.n = n;
    out.ell = ell;
    const auto x = static_cast<double>(n);
    out.theorem1 = bound_theorem1(x, params);
    out.explicit_bound = bound_explicit(x, params.eps);
    out.theorem2 = bound_theorem2(x, params);
    out.theorem1_ok = within_bound(ell, out.theorem1);
    out.explicit_ok = within_bound(ell, out.explicit_bound);
    out.theorem2_ok = within_bound(ell, out.theorem2);
    return out;
}

BoundComparison compare(Natural n, const BoundParams& params, ScanOptions opts) {
    return compare(n, ell(n, opts), params);
}

std::vector<BoundComparison> compare_milestones(const std::vector<Milestone>& milestones, const BoundParams& params) {
    std::vector<BoundComparison> out;
    for (const auto& m : milestones)
        if (m.n >= 16) out.push_back(compare(m.n, m.best.length, params));
    return out;
}

OrderingReport bound_ordering(double decade_lo, double decade_hi, const BoundParams& params) {
    OrderingReport report;
    auto ordered = [&](double n) {
        const double t2 = bound_theorem2(n, params);
        const double ex = bound_explicit(n, params.eps);
        const double t1 = bound_theorem1(n, params);
        return t2 <= ex && ex <= t1;
    };
    for (double e = decade_lo; e <= decade_hi + 1e-9; e += 0.5) {
        const double n = std::pow(10.0, e);
        report.grid.push_back({n, ordered(n)});
    }
    // theorem2 − explicit changes sign once for N > e; bisect on log N.
    auto diff = [&](double log_n) {
        const double n = std::exp(log_n);
        return std::log(bound_theorem2(n, params)) - std::log(bound_explicit(n, params.eps));
    };
    double lo = 1.0 + 1e-9, hi = std::log(std::pow(10.0, decade_hi));
    if (diff(lo) > 0 && diff(hi) <= 0) {
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (diff(mid) > 0 ? lo : hi) = mid;
        }
        report.crossover_theorem2_explicit = std::exp(hi);
    }
    return report;
}

}  // namespace drl
