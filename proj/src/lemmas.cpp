#include "drl/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "drl/error.hpp"
#include "parallel.hpp"

namespace drl {

namespace {

constexpr double kRelativeGuard = 1e-9;

std::string u128_to_string(Uint128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

// Σ (p−1)·ν_p(m) over the factorization of m.
Natural weighted_valuation_sum(Natural m) {
    Natural total = 0;
    for (const auto& pe : factorize(m)) total += (pe.prime - 1) * pe.exponent;
    return total;
}

// base^exp ≤ bound, without overflow.
bool power_at_most(Natural base, Natural exp, Natural bound) {
    Uint128 acc = 1;
    for (Natural i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > bound) return false;
    }
    return true;
}

PrimeTable table_for(Natural n) { return PrimeTable(std::max<Natural>(n, 2)); }

}  // namespace

std::string_view lemma_name(LemmaId id) {
    switch (id) {
        case LemmaId::L1: return "L1";
        case LemmaId::L2: return "L2";
        case LemmaId::L3: return "L3";
        case LemmaId::L4: return "L4";
        case LemmaId::L5: return "L5";
        case LemmaId::L6: return "L6";
        case LemmaId::EQ5: return "EQ5";
        case LemmaId::EQ8: return "EQ8";
        case LemmaId::RUNDIV: return "RUNDIV";
    }
    return "?";
}

std::optional<LemmaId> parse_lemma(std::string_view name) {
    for (LemmaId id : all_lemmas()) {
        const auto canon = lemma_name(id);
        if (canon.size() != name.size()) continue;
        bool same = true;
        for (std::size_t i = 0; i < name.size(); ++i)
            if (std::toupper(static_cast<unsigned char>(name[i])) != canon[i]) same = false;
        if (same) return id;
    }
    return std::nullopt;
}

bool lemma_is_exact(LemmaId id) {
    return id == LemmaId::L1 || id == LemmaId::L6 || id == LemmaId::EQ5 || id == LemmaId::EQ8 || id == LemmaId::RUNDIV;
}

std::vector<LemmaId> all_lemmas() {
    return {LemmaId::L1, LemmaId::L2, LemmaId::L3, LemmaId::L4, LemmaId::L5,
            LemmaId::L6, LemmaId::EQ5, LemmaId::EQ8, LemmaId::RUNDIV};
}

std::string lemma_report_json(const LemmaReport& r) {
    nlohmann::ordered_json j;
    j["lemma_id"] = lemma_name(r.id);
    j["range"] = {{"lo", r.range.lo}, {"hi", r.range.hi}};
    j["verdict"] = !lemma_is_exact(r.id) ? "monitor" : (r.pass() ? "pass" : "fail");
    j["worst_residual"] = {{"value", r.worst_residual}, {"description", r.residual_description}};
    auto witnesses = nlohmann::ordered_json::array();
    for (const auto& w : r.violations) witnesses.push_back({{"inputs", w.inputs}, {"detail", w.detail}});
    j["witnesses"] = witnesses;
    j["seed"] = r.seed;
    if (!r.trend.empty()) {
        auto trend = nlohmann::ordered_json::array();
        for (const auto& t : r.trend) trend.push_back({{"n", t.n}, {"value", t.value}, {"residual", t.residual}});
        j["trend"] = trend;
    }
    if (!r.notes.empty()) {
        nlohmann::ordered_json notes;
        for (const auto& [k, v] : r.notes) notes[k] = v;
        j["notes"] = notes;
    }
    return j.dump(2);
}

// ---------------------------------------------------------------- lcm(1..n)

LemmaReport check_lemma1(Natural n_max) {
    if (n_max < 1) fail(ErrorCode::domain, "check_lemma1: n_max must be >= 1");
    LemmaReport r;
    r.id = LemmaId::L1;
    r.range = {1, n_max + 1};
    r.residual_description = "min over n of lcm(1..n+1) / 2^n";
    BigNatural lcm = 1;
    BigNatural power = 1;
    double worst_log2 = INFINITY;
    for (Natural n = 1; n <= n_max; ++n) {
        mpz_lcm_ui(lcm.get_mpz_t(), lcm.get_mpz_t(), static_cast<unsigned long>(n + 1));
        power *= 2;
        if (lcm < power) r.violations.push_back({{n}, "lcm(1.." + std::to_string(n + 1) + ") < 2^" + std::to_string(n)});
        long exp = 0;
        const double mant = mpz_get_d_2exp(&exp, lcm.get_mpz_t());
        const double log2_ratio = static_cast<double>(exp) + std::log2(mant) - static_cast<double>(n);
        worst_log2 = std::min(worst_log2, log2_ratio);
    }
    r.worst_residual = std::exp2(worst_log2);
    return r;
}

// ------------------------------------------------------ prime-sum monitors

double mertens_sum(const PrimeTable& table, Natural n) {
    if (n < 2) fail(ErrorCode::domain, "mertens_sum: n must be >= 2");
    return table.sum_reciprocal(n);
}
double mertens_sum(Natural n) { return mertens_sum(table_for(n), n); }

double chebyshev_theta(const PrimeTable& table, Natural n) {
    if (n < 2) fail(ErrorCode::domain, "chebyshev_theta: n must be >= 2");
    return table.theta(n);
}
double chebyshev_theta(Natural n) { return chebyshev_theta(table_for(n), n); }

double sum_inv_log_p(const PrimeTable& table, Natural n) {
    if (n < 3) fail(ErrorCode::domain, "sum_inv_log_p: n must be >= 3");
    return table.sum_inv_log(n);
}
double sum_inv_log_p(Natural n) { return sum_inv_log_p(table_for(n), n); }

Uint128 sum_primes(const PrimeTable& table, Natural n) {
    if (n < 2) fail(ErrorCode::domain, "sum_primes: n must be >= 2");
    return table.sum_primes(n);
}
Uint128 sum_primes(Natural n) { return sum_primes(table_for(n), n); }

std::vector<Natural> log_grid(Natural lo, Natural hi) {
    std::vector<Natural> out;
    for (int half = 2; half <= 38; ++half) {
        const auto n = static_cast<Natural>(std::llround(std::pow(10.0, half / 2.0)));
        if (n > hi) break;
        if (n >= lo) out.push_back(n);
    }
    return out;
}

MertensFit fit_mertens(const PrimeTable& table, Natural hi) {
    MertensFit fit;
    const auto grid = log_grid(10, std::min(hi, table.limit()));
    std::vector<double> plateau;
    for (Natural n : grid) {
        const double excess = table.sum_reciprocal(n) - std::log(std::log(double(n)));
        fit.trend.push_back({n, table.sum_reciprocal(n), excess});
        if (n >= 10'000) {
            plateau.push_back(excess);
            if (!fit.plateau_lo) fit.plateau_lo = n;
            fit.plateau_hi = n;
        }
    }
    if (plateau.empty()) {
        // Range too short for a plateau; fall back to the last point.
        plateau.push_back(fit.trend.back().residual);
        fit.plateau_lo = fit.plateau_hi = fit.trend.back().n;
    }
    std::sort(plateau.begin(), plateau.end());
    const std::size_t mid = plateau.size() / 2;
    fit.m_estimate = plateau.size() % 2 ? plateau[mid] : 0.5 * (plateau[mid - 1] + plateau[mid]);

    for (auto& t : fit.trend) t.residual -= fit.m_estimate;
    for (const auto& t : fit.trend)
        if (t.n >= 1000 && t.n <= 1'000'000) fit.c = std::max(fit.c, std::fabs(t.residual) * std::log(double(t.n)));
    for (const auto& t : fit.trend)
        if (t.n > 1'000'000 && std::fabs(t.residual) > fit.c / std::log(double(t.n))) fit.tolerance_holds = false;
    return fit;
}

LemmaReport monitor_lemma2(Natural n_max) {
    if (n_max < 10) fail(ErrorCode::domain, "monitor_lemma2: n_max must be >= 10");
    const PrimeTable table(n_max);
    const MertensFit fit = fit_mertens(table, n_max);
    LemmaReport r;
    r.id = LemmaId::L2;
    r.range = {2, n_max + 1};
    r.trend = fit.trend;
    r.residual_description = "max |Σ1/p − log log n − M̂| over the grid";
    for (const auto& t : fit.trend) r.worst_residual = std::max(r.worst_residual, std::fabs(t.residual));
    r.notes.push_back({"mertens_constant_estimate", fmt(fit.m_estimate)});
    r.notes.push_back({"estimation_range", std::to_string(fit.plateau_lo) + ".." + std::to_string(fit.plateau_hi)});
    r.notes.push_back({"fitted_c", fmt(fit.c)});
    r.notes.push_back({"tolerance_c_over_log_n_holds_above_1e6", fit.tolerance_holds ? "true" : "false"});
    double lo = INFINITY, hi = -INFINITY;
    int seen = 0;
    for (const auto& t : fit.trend)
        if (t.n == 100'000 || t.n == 1'000'000 || t.n == 10'000'000) {
            lo = std::min(lo, t.residual);
            hi = std::max(hi, t.residual);
            ++seen;
        }
    if (seen == 3) r.notes.push_back({"plateau_width_1e5_1e7", fmt(hi - lo)});
    return r;
}

LemmaReport monitor_lemma3(Natural n_max) {
    if (n_max < 10) fail(ErrorCode::domain, "monitor_lemma3: n_max must be >= 10");
    const PrimeTable table(n_max);
    LemmaReport r;
    r.id = LemmaId::L3;
    r.range = {2, n_max + 1};
    r.residual_description = "|θ(n)/n − 1| at the largest grid point";
    bool decreasing = true;
    double previous = INFINITY;
    for (Natural n : log_grid(10, n_max)) {
        const double theta = table.theta(n);
        const double dev = theta / double(n) - 1;
        r.trend.push_back({n, theta, dev});
        // Compare whole decades only; half decades wobble with prime gaps.
        if (std::to_string(n).find_first_not_of('0', 1) == std::string::npos) {
            if (std::fabs(dev) > previous) decreasing = false;
            previous = std::fabs(dev);
        }
    }
    r.worst_residual = std::fabs(r.trend.back().residual);
    r.notes.push_back({"abs_deviation_decreasing_by_decade", decreasing ? "true" : "false"});
    return r;
}

LemmaReport monitor_lemma4(Natural n_max) {
    if (n_max < 10) fail(ErrorCode::domain, "monitor_lemma4: n_max must be >= 10");
    const PrimeTable table(n_max);
    LemmaReport r;
    r.id = LemmaId::L4;
    r.range = {3, n_max + 1};
    r.residual_description = "ratio Σ1/log p ÷ (n/(log n)²) at the largest grid point";
    bool decreasing = true;
    double previous = INFINITY;
    for (Natural n : log_grid(10, n_max)) {
        const double s = table.sum_inv_log(n);
        const double ln = std::log(double(n));
        const double ratio = s / (double(n) / (ln * ln));
        r.trend.push_back({n, s, ratio});
        const double scaled = s * ln / double(n);  // the o(1) factor
        if (scaled > previous) decreasing = false;
        previous = scaled;
    }
    r.worst_residual = r.trend.back().residual;
    r.notes.push_back({"sum_times_log_n_over_n_decreasing", decreasing ? "true" : "false"});
    return r;
}

LemmaReport monitor_lemma5(Natural n_max) {
    if (n_max < 10) fail(ErrorCode::domain, "monitor_lemma5: n_max must be >= 10");
    const PrimeTable table(n_max);
    LemmaReport r;
    r.id = LemmaId::L5;
    r.range = {2, n_max + 1};
    r.residual_description = "ratio Σp ÷ (n²/(2 log n)) at the largest grid point";
    for (Natural n : log_grid(10, n_max)) {
        const Uint128 s = table.sum_primes(n);
        const double x = double(n);
        r.trend.push_back({n, static_cast<double>(s), static_cast<double>(s) / (x * x / (2 * std::log(x)))});
    }
    r.worst_residual = r.trend.back().residual;
    r.notes.push_back({"sum_primes_at_max", u128_to_string(table.sum_primes(n_max))});
    return r;
}

// ---------------------------------------------------------------- Ω(n) vs d(n)

Lemma6Check check_lemma6(Natural n, Natural dn, Natural p_min) {
    if (n < 2 || p_min < 2 || dn < 2 || n % p_min != 0)
        fail(ErrorCode::domain, "check_lemma6: inconsistent (n, d(n), p_min) = (" + std::to_string(n) + ", " +
                                    std::to_string(dn) + ", " + std::to_string(p_min) + ")");
    Lemma6Check out;
    out.lhs = std::log(double(n)) / std::log(double(p_min));
    out.rhs = weighted_valuation_sum(dn);
    const double rhs = static_cast<double>(out.rhs);
    if (std::fabs(out.lhs - rhs) <= kRelativeGuard * std::max(1.0, rhs)) {
        // log n / log p ≥ r  ⇔  p^r ≤ n
        out.pass = power_at_most(p_min, out.rhs, n);
        out.equality = out.pass && !power_at_most(p_min, out.rhs, n - 1);
    } else {
        out.pass = out.lhs > rhs;
    }
    return out;
}

Lemma6Check check_lemma6(Natural n) {
    if (n < 2) fail(ErrorCode::domain, "check_lemma6: n must be >= 2 (n = 1 has no prime divisor)");
    const auto f = factorize(n);
    return check_lemma6(n, divisor_count(f), f.front().prime);
}

LemmaReport check_lemma6_range(Natural n_max, unsigned threads) {
    if (n_max < 2) fail(ErrorCode::domain, "check_lemma6_range: n_max must be >= 2");
    LemmaReport r;
    r.id = LemmaId::L6;
    r.range = {2, n_max + 1};
    r.residual_description = "min over n of lhs − rhs";

    const Natural width = std::min<Natural>(kDefaultSegmentWidth, n_max - 1);
    const Natural segments = (n_max - 1 + width - 1) / width;
    const PrimeTable base(std::max<Natural>(2, isqrt(n_max)));

    struct Partial {
        std::vector<Witness> violations;
        std::vector<Natural> equalities;
        double worst = INFINITY;
    };
    std::vector<Partial> parts(segments);
    detail::parallel_for(segments, threads, [&](std::size_t s, std::size_t) {
        const Natural lo = 2 + s * width;
        const Natural hi = std::min(n_max + 1, lo + width);
        const auto d = sieve_divisor_counts({lo, hi});
        // Smallest prime factor by first-touch marking with primes ≤ √hi.
        std::vector<Natural> spf(hi - lo, 0);
        for (Natural p : base.primes()) {
            if (p > (hi - 1) / p) break;
            for (Natural x = std::max(p * p, (lo + p - 1) / p * p); x < hi; x += p)
                if (!spf[x - lo]) spf[x - lo] = p;
        }
        auto& part = parts[s];
        for (Natural n = lo; n < hi; ++n) {
            const Natural pm = spf[n - lo] ? spf[n - lo] : n;
            const Natural dn = d[n - lo];
            const Lemma6Check c = check_lemma6(n, dn, pm);
            part.worst = std::min(part.worst, c.equality ? 0.0 : c.lhs - double(c.rhs));
            if (!c.pass)
                part.violations.push_back({{n}, "log n/log p_min = " + fmt(c.lhs) + " < " + std::to_string(c.rhs)});
            if (c.equality) part.equalities.push_back(n);
        }
    });

    std::vector<Natural> equalities;
    r.worst_residual = INFINITY;
    for (auto& part : parts) {
        r.violations.insert(r.violations.end(), part.violations.begin(), part.violations.end());
        equalities.insert(equalities.end(), part.equalities.begin(), part.equalities.end());
        r.worst_residual = std::min(r.worst_residual, part.worst);
    }

    // Equality cases are reported with their shape; no pattern is asserted.
    std::size_t prime_power_form = 0;
    std::ostringstream first;
    for (std::size_t i = 0; i < equalities.size(); ++i) {
        const auto f = factorize(equalities[i]);
        if (f.size() == 1 && is_prime(f.front().exponent + 1)) ++prime_power_form;
        if (i < 40) first << (i ? " " : "") << equalities[i];
    }
    r.notes.push_back({"equality_cases", std::to_string(equalities.size())});
    r.notes.push_back({"equality_cases_of_form_p^(q-1)_q_prime", std::to_string(prime_power_form)});
    r.notes.push_back({"equality_cases_first", first.str()});
    return r;
}

// ------------------------------------------------------------------ k vs Σ(p−1)ν_p(k+1)

Eq8Check check_eq8(Natural k) {
    if (k < 1) fail(ErrorCode::domain, "check_eq8: k must be >= 1");
    Eq8Check out;
    out.lhs = k;
    out.rhs = weighted_valuation_sum(k + 1);
    out.pass = out.lhs >= out.rhs;
    return out;
}

LemmaReport check_eq8_range(Natural k_max) {
    if (k_max < 1) fail(ErrorCode::domain, "check_eq8_range: k_max must be >= 1");
    LemmaReport r;
    r.id = LemmaId::EQ8;
    r.range = {1, k_max + 1};
    r.residual_description = "min over k of k − Σ(p−1)ν_p(k+1)";
    Natural worst = ~Natural{0};
    std::size_t equalities = 0;
    for (Natural k = 1; k <= k_max; ++k) {
        const Eq8Check c = check_eq8(k);
        if (!c.pass) {
            r.violations.push_back({{k}, std::to_string(k) + " < " + std::to_string(c.rhs)});
            worst = 0;
        } else {
            worst = std::min(worst, c.lhs - c.rhs);
            if (c.lhs == c.rhs) ++equalities;
        }
    }
    r.worst_residual = static_cast<double>(worst);
    r.notes.push_back({"equality_cases", std::to_string(equalities)});
    return r;
}

// ------------------------------------------------------------------ ν_p over a window

Eq5Check check_eq5(Natural p, Window window, Natural n) {
    window.validate();
    if (!is_prime(p)) fail(ErrorCode::invalid_argument, "check_eq5: p = " + std::to_string(p) + " is not prime");
    const Natural k = window.width();
    if (window.hi - 1 > n) fail(ErrorCode::domain, "check_eq5: window must lie inside [1, N]");

    Eq5Check out;
    for (Natural x = (window.lo + p - 1) / p * p; x < window.hi; x += p) {
        Natural y = x;
        while (y % p == 0) {
            y /= p;
            ++out.lhs;
        }
    }
    out.rhs = std::log(double(n)) / std::log(double(p)) + double(k) / double(p - 1);
    const double lhs = static_cast<double>(out.lhs);
    if (std::fabs(lhs - out.rhs) > kRelativeGuard * std::max(1.0, out.rhs)) {
        out.pass = lhs < out.rhs;
        return out;
    }
    // lhs < log_p N + k/(p−1)  ⇔  a < (p−1)·log_p N with a = lhs·(p−1) − k
    //                          ⇔  p^a < N^(p−1) for a > 0.
    const auto a = static_cast<long double>(out.lhs) * (p - 1) - static_cast<long double>(k);
    if (a < 0) {
        out.pass = true;
    } else if (a == 0) {
        out.pass = n > 1;
    } else {
        BigNatural left, right;
        mpz_ui_pow_ui(left.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(a));
        mpz_ui_pow_ui(right.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(p - 1));
        out.pass = left < right;
    }
    return out;
}

LemmaReport check_eq5_random(std::size_t trials, std::uint64_t seed) {
    LemmaReport r;
    r.id = LemmaId::EQ5;
    r.seed = seed;
    r.range = {1, 2'000'000'000'001ull};
    r.residual_description = "min over trials of rhs − lhs";
    r.worst_residual = INFINITY;

    std::mt19937_64 rng(seed);
    const auto& primes = small_primes();
    auto uniform = [&rng](Natural lo, Natural hi) { return std::uniform_int_distribution<Natural>(lo, hi)(rng); };
    for (std::size_t t = 0; t < trials; ++t) {
        const Natural k = uniform(2, 10'000);
        Natural p;
        if (t % 2 == 0) {
            p = primes.primes()[uniform(0, std::min<Natural>(3, primes.pi(k) - 1))];
        } else {
            p = primes.primes()[uniform(0, primes.pi(k) - 1)];
        }
        Natural lo = uniform(1, 1'000'000'000'000ull);
        if (t % 3 == 0) {
            // Align the window on a high power of p to load the log N/log p term.
            Natural q = p;
            while (q <= 1'000'000'000'000ull / p) q *= p;
            lo = q * uniform(1, std::max<Natural>(1, 1'000'000'000'000ull / q)) - uniform(0, k - 1);
            lo = std::max<Natural>(lo, 1);
        }
        const Natural hi = lo + k;
        const Natural n = (t % 4 == 0) ? hi - 1 : hi - 1 + uniform(0, 1'000'000'000'000ull);
        const Eq5Check c = check_eq5(p, {lo, hi}, n);
        r.worst_residual = std::min(r.worst_residual, c.rhs - double(c.lhs));
        if (!c.pass)
            r.violations.push_back({{p, lo, hi, n}, "Σν_p = " + std::to_string(c.lhs) + " >= " + fmt(c.rhs)});
    }
    r.notes.push_back({"trials", std::to_string(trials)});
    return r;
}

// --------------------------------------------------- run divisibility

bool run_divisibility_holds(const RunRecord& run) {
    if (run.length < 2) return true;
    static const std::vector<BigNatural> lcms = [] {
        std::vector<BigNatural> v;
        for (Natural K = 1; K <= 64; ++K) v.push_back(lcm_range(K));
        return v;
    }();
    const unsigned K = floor_log2(run.length);
    const BigNatural d = static_cast<unsigned long>(run.divisor_count);
    return mpz_divisible_p(d.get_mpz_t(), lcms[std::max(1u, K) - 1].get_mpz_t()) != 0;
}

LemmaReport check_run_divisibility(Natural n, ScanOptions opts) {
    LemmaReport r;
    r.id = LemmaId::RUNDIV;
    r.range = {1, n + 1};
    r.residual_description = "longest run checked";
    opts.n = n;
    opts.lo = 1;
    std::size_t checked = 0, nontrivial = 0;
    RunScan scan(opts);
    scan.set_visitor([&](const RunRecord& run) {
        if (run.length < 2) return;
        ++checked;
        if (run.length >= 4) ++nontrivial;
        if (!run_divisibility_holds(run))
            r.violations.push_back({{run.start, run.length, run.divisor_count},
                                    "lcm(1.." + std::to_string(floor_log2(run.length)) + ") does not divide " +
                                        std::to_string(run.divisor_count)});
    });
    scan.run_to_completion();
    r.worst_residual = static_cast<double>(scan.best().length);
    r.notes.push_back({"runs_checked", std::to_string(checked)});
    r.notes.push_back({"runs_with_K_at_least_2", std::to_string(nontrivial)});
    return r;
}

// ---------------------------------------------------------------- dispatch

Natural default_range(LemmaId id) {
    switch (id) {
        case LemmaId::L1: return 2000;
        case LemmaId::L2: return 10'000'000;
        case LemmaId::L3: return 100'000'000;
        case LemmaId::L4: return 10'000'000;
        case LemmaId::L5: return 100'000'000;
        case LemmaId::L6: return 1'000'000;
        case LemmaId::EQ5: return 10'000;
        case LemmaId::EQ8: return 1'000'000;
        case LemmaId::RUNDIV: return 10'000'000;
    }
    return 0;
}

LemmaReport run_lemma(LemmaId id, const VerifyOptions& opts) {
    const Natural max = opts.max.value_or(default_range(id));
    LemmaReport r;
    switch (id) {
        case LemmaId::L1: r = check_lemma1(max); break;
        case LemmaId::L2: r = monitor_lemma2(max); break;
        case LemmaId::L3: r = monitor_lemma3(max); break;
        case LemmaId::L4: r = monitor_lemma4(max); break;
        case LemmaId::L5: r = monitor_lemma5(max); break;
        case LemmaId::L6: r = check_lemma6_range(max, opts.threads); break;
        case LemmaId::EQ5: r = check_eq5_random(static_cast<std::size_t>(max), opts.seed); break;
        case LemmaId::EQ8: r = check_eq8_range(max); break;
        case LemmaId::RUNDIV: {
            ScanOptions so;
            so.segment_width = opts.segment_width;
            so.threads = opts.threads;
            r = check_run_divisibility(max, so);
            break;
        }
    }
    r.seed = opts.seed;
    return r;
}

}  // namespace drl
