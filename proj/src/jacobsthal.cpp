#include "drl/jacobsthal.hpp"

#include <algorithm>
#include <sstream>

#include "drl/error.hpp"
#include "parallel.hpp"

namespace drl {

namespace {

struct ChunkSummary {
    Natural first = 0;  // 0: no coprime element in the chunk
    Natural last = 0;
    Natural best_diff = 0;
    Natural best_start = 0;
};

ChunkSummary scan_chunk(Natural lo, Natural hi, std::span<const Natural> primes, std::vector<std::uint8_t>& marks) {
    const Natural width = hi - lo;
    marks.assign(width, 0);
    for (const Natural p : primes)
        for (Natural x = (lo + p - 1) / p * p; x < hi; x += p) marks[x - lo] = 1;

    ChunkSummary s;
    for (Natural i = 0; i < width; ++i) {
        if (marks[i]) continue;
        const Natural x = lo + i;
        if (!s.first) {
            s.first = x;
        } else if (x - s.last > s.best_diff) {
            s.best_diff = x - s.last;
            s.best_start = s.last + 1;
        }
        s.last = x;
    }
    return s;
}

std::vector<Natural> primes_at_most(Natural m) {
    const auto& small = small_primes();
    if (m <= small.limit()) {
        const auto all = small.primes();
        return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(small.pi(m))};
    }
    const PrimeTable t(m);
    return {t.primes().begin(), t.primes().end()};
}

}  // namespace

CoprimeGapProfile jacobsthal_exact(std::span<const Natural> prime_support, const JacobsthalOptions& opts) {
    if (prime_support.empty()) fail(ErrorCode::domain, "jacobsthal_exact: prime support must be nonempty");
    std::vector<Natural> primes(prime_support.begin(), prime_support.end());
    std::sort(primes.begin(), primes.end());
    if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
        fail(ErrorCode::domain, "jacobsthal_exact: support primes must be distinct");
    for (Natural p : primes)
        if (!is_prime(p)) fail(ErrorCode::domain, "jacobsthal_exact: " + std::to_string(p) + " is not prime");

    BigNatural modulus = 1;
    std::size_t feasible = 0;
    for (Natural p : primes) {
        modulus *= static_cast<unsigned long>(p);
        if (modulus <= static_cast<unsigned long>(std::min<Natural>(opts.budget, ~0ul))) ++feasible;
    }
    if (feasible < primes.size())
        fail(ErrorCode::budget, "jacobsthal_exact: modulus " + modulus.get_str() + " exceeds the budget of " +
                                    std::to_string(opts.budget) + " residues; feasible support size is " +
                                    std::to_string(feasible) + " of these primes");

    const Natural m = modulus.get_ui();
    const Natural end = m + 2;  // scan [1, m+1]; m+1 ≡ 1 closes the cycle
    const Natural chunk = std::max<Natural>(opts.chunk, 1);
    const Natural chunks = (end - 1 + chunk - 1) / chunk;
    const unsigned threads = std::max(1u, opts.threads);

    std::vector<ChunkSummary> summaries(chunks);
    std::vector<std::vector<std::uint8_t>> marks(threads);
    detail::parallel_for(chunks, threads, [&](std::size_t c, std::size_t worker) {
        const Natural lo = 1 + c * chunk;
        summaries[c] = scan_chunk(lo, std::min(end, lo + chunk), primes, marks[worker]);
    });

    Natural best = 0, best_start = 0, prev_last = 0;
    for (const auto& s : summaries) {
        if (!s.first) continue;
        if (prev_last && s.first - prev_last > best) {
            best = s.first - prev_last;
            best_start = prev_last + 1;
        }
        if (s.best_diff > best) {
            best = s.best_diff;
            best_start = s.best_start;
        }
        prev_last = s.last;
    }

    CoprimeGapProfile out;
    out.modulus = modulus;
    out.prime_support = std::move(primes);
    out.j_value = best;
    out.witness_gap_start = best_start;
    return out;
}

CoprimeGapProfile jacobsthal_primorial(Natural m, const JacobsthalOptions& opts) {
    if (m < 2) fail(ErrorCode::domain, "jacobsthal_primorial: M must be >= 2");
    const auto primes = primes_at_most(m);
    return jacobsthal_exact(primes, opts);
}

std::optional<Natural> coprime_witness(Window window, Natural m) {
    window.validate();
    const auto primes = m >= 2 ? primes_at_most(m) : std::vector<Natural>{};
    for (Natural x = window.lo; x < window.hi; ++x) {
        bool coprime = true;
        for (Natural p : primes) {
            if (x % p == 0) {
                coprime = false;
                break;
            }
        }
        if (coprime) return x;
    }
    return std::nullopt;
}

JacobsthalTable jacobsthal_table(Natural max_m, const JacobsthalOptions& opts, bool truncate) {
    if (max_m < 2) fail(ErrorCode::domain, "jacobsthal_table: max M must be >= 2");
    JacobsthalTable table;
    BigNatural running = 1;
    for (Natural p : primes_at_most(max_m)) {
        running *= static_cast<unsigned long>(p);
        if (running > static_cast<unsigned long>(std::min<Natural>(opts.budget, ~0ul))) {
            if (!truncate)
                fail(ErrorCode::budget, "jacobsthal table: " + std::to_string(p) + "# = " + running.get_str() +
                                            " exceeds the budget of " + std::to_string(opts.budget) +
                                            " residues; largest feasible M is " +
                                            (table.rows.empty() ? std::string("none") : std::to_string(table.rows.back().m)));
            table.truncated = true;
            break;
        }
        table.rows.push_back({p, jacobsthal_primorial(p, opts)});
    }
    return table;
}

const JacobsthalTable& default_jacobsthal_table() {
    static const JacobsthalTable table = jacobsthal_table(1000, {}, true);
    return table;
}

std::string jacobsthal_table_csv(const JacobsthalTable& table) {
    std::ostringstream out;
    out << "M,primorial,j,witness_start\n";
    for (const auto& row : table.rows)
        out << row.m << ',' << row.profile.modulus.get_str() << ',' << row.profile.j_value << ','
            << row.profile.witness_gap_start << '\n';
    return out.str();
}

MSelection largest_m_with_j_at_most(Natural k, const JacobsthalTable& table) {
    if (k < 2) fail(ErrorCode::domain, "largest_m_with_j_at_most: k must be >= 2");
    if (table.rows.empty()) fail(ErrorCode::domain, "largest_m_with_j_at_most: empty Jacobsthal table");
    MSelection sel;
    for (const auto& row : table.rows) {
        if (row.profile.j_value > k) return sel;
        sel.m = row.m;
        sel.j = row.profile.j_value;
    }
    sel.table_limited = true;
    return sel;
}

MSelection largest_m_with_j_at_most(Natural k) { return largest_m_with_j_at_most(k, default_jacobsthal_table()); }

PipelineCheck check_pipeline(const RunRecord& run, const JacobsthalTable& table) {
    PipelineCheck out;
    out.run = run;
    out.selection = largest_m_with_j_at_most(run.length, table);
    out.witness = coprime_witness({run.start, run.end()}, out.selection.m);
    if (!out.witness || *out.witness < 2) return out;
    const Natural x = *out.witness;
    const auto f = factorize(x);
    out.p_min = f.front().prime;
    const Natural d = divisor_count(f);
    out.lemma6 = check_lemma6(x, d, out.p_min);
    const unsigned K = floor_log2(run.length);
    for (Natural p : primes_at_most(std::max(2u, K)))
        if (p <= K && d % p != 0) out.primes_not_dividing_d.push_back(p);
    return out;
}

}  // namespace drl
