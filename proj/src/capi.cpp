#include "drl/drl.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "drl/bounds.hpp"
#include "drl/error.hpp"
#include "drl/jacobsthal.hpp"
#include "drl/lemmas.hpp"
#include "drl/report.hpp"
#include "drl/sieve.hpp"

#ifndef DRL_VERSION_STRING
#define DRL_VERSION_STRING "0.0.0"
#endif

struct drl_scan {
    drl::RunScan scan;
};

struct drl_lemma_report {
    drl::LemmaReport report;
};

struct drl_jacobsthal_table {
    drl::JacobsthalTable table;
};

namespace {

thread_local std::string g_last_error;

drl_status to_status(drl::ErrorCode code) {
    switch (code) {
        case drl::ErrorCode::invalid_argument: return DRL_E_INVALID_ARGUMENT;
        case drl::ErrorCode::domain: return DRL_E_DOMAIN;
        case drl::ErrorCode::capacity: return DRL_E_CAPACITY;
        case drl::ErrorCode::checkpoint_mismatch: return DRL_E_CHECKPOINT_MISMATCH;
        case drl::ErrorCode::io: return DRL_E_IO;
        case drl::ErrorCode::budget: return DRL_E_BUDGET;
    }
    return DRL_E_INTERNAL;
}

template <class Fn>
drl_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const drl::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return DRL_E_CAPACITY;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DRL_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return DRL_E_INTERNAL;
    }
}

drl_status null_argument(const char* what) {
    g_last_error = std::string("null argument: ") + what;
    return DRL_E_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

drl::ScanOptions scan_options(const drl_scan_config& c) {
    drl::ScanOptions o;
    o.lo = c.lo ? c.lo : 1;
    o.n = c.n;
    o.segment_width = c.segment_width ? c.segment_width : drl::kDefaultSegmentWidth;
    o.threads = c.threads ? c.threads : 1;
    return o;
}

drl::BoundParams bound_params(const drl_bound_params* p) {
    if (!p) return {};
    return {p->c, p->c1, p->c2, p->eps};
}

drl_run to_c(const drl::RunRecord& r) { return {r.start, r.length, r.divisor_count}; }

drl_jacobsthal_profile to_c(const drl::CoprimeGapProfile& p) {
    return {p.modulus.get_ui(), p.j_value, p.witness_gap_start};
}

drl::JacobsthalOptions jacobsthal_options(uint64_t budget, unsigned threads) {
    drl::JacobsthalOptions o;
    if (budget) o.budget = budget;
    o.threads = threads ? threads : 1;
    return o;
}

}  // namespace

extern "C" {

const char* drl_version(void) { return DRL_VERSION_STRING; }

const char* drl_status_name(drl_status status) {
    switch (status) {
        case DRL_OK: return "ok";
        case DRL_E_INVALID_ARGUMENT: return "invalid argument";
        case DRL_E_DOMAIN: return "domain error";
        case DRL_E_CAPACITY: return "capacity exceeded";
        case DRL_E_CHECKPOINT_MISMATCH: return "checkpoint mismatch";
        case DRL_E_IO: return "i/o error";
        case DRL_E_BUDGET: return "budget exceeded";
        case DRL_E_BUFFER_TOO_SMALL: return "buffer too small";
        case DRL_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* drl_last_error(void) { return g_last_error.c_str(); }

void drl_string_free(char* s) { std::free(s); }

// ------------------------------------------------------------ arithmetic

drl_status drl_divisor_count(uint64_t n, uint64_t* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = drl::divisor_count(n);
        return DRL_OK;
    });
}

drl_status drl_omega(uint64_t n, uint64_t* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = drl::omega(n);
        return DRL_OK;
    });
}

drl_status drl_big_omega(uint64_t n, uint64_t* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = drl::big_omega(n);
        return DRL_OK;
    });
}

drl_status drl_nu(uint64_t p, uint64_t n, uint64_t* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = drl::nu(p, n);
        return DRL_OK;
    });
}

drl_status drl_factorize(uint64_t n, uint64_t* primes, uint32_t* exponents, size_t capacity, size_t* count) {
    if (!count) return null_argument("count");
    if (capacity && (!primes || !exponents)) return null_argument("primes/exponents");
    return guarded([&] {
        const auto f = drl::factorize(n);
        *count = f.size();
        for (size_t i = 0; i < f.size() && i < capacity; ++i) {
            primes[i] = f[i].prime;
            exponents[i] = f[i].exponent;
        }
        if (capacity < f.size()) {
            g_last_error = "factorization has " + std::to_string(f.size()) + " primes";
            return DRL_E_BUFFER_TOO_SMALL;
        }
        return DRL_OK;
    });
}

drl_status drl_primorial(uint64_t n, char** out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = dup_string(drl::primorial(n).get_str());
        return DRL_OK;
    });
}

drl_status drl_lcm_range(uint64_t n, char** out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = dup_string(drl::lcm_range(n).get_str());
        return DRL_OK;
    });
}

// ------------------------------------------------------------ sieve

drl_status drl_sieve_divisor_counts(uint64_t lo, uint64_t hi, uint32_t* out, size_t capacity) {
    if (!out) return null_argument("out");
    return guarded([&] {
        const drl::Window w{lo, hi};
        w.validate();
        if (capacity < w.width()) {
            g_last_error = "output buffer holds " + std::to_string(capacity) + " of " + std::to_string(w.width());
            return DRL_E_BUFFER_TOO_SMALL;
        }
        drl::DivisorSieve sieve;
        sieve.run(w, {out, static_cast<size_t>(w.width())});
        return DRL_OK;
    });
}

drl_status drl_scan_create(const drl_scan_config* config, drl_scan** out) {
    if (!config) return null_argument("config");
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = new drl_scan{drl::RunScan(scan_options(*config))};
        return DRL_OK;
    });
}

drl_status drl_scan_resume(const drl_scan_config* config, const char* checkpoint_path, drl_scan** out) {
    if (!config) return null_argument("config");
    if (!checkpoint_path) return null_argument("checkpoint_path");
    if (!out) return null_argument("out");
    return guarded([&] {
        const auto ck = drl::read_checkpoint(checkpoint_path);
        *out = new drl_scan{drl::RunScan(scan_options(*config), ck)};
        return DRL_OK;
    });
}

void drl_scan_destroy(drl_scan* scan) { delete scan; }

drl_status drl_scan_advance(drl_scan* scan, uint64_t max_segments, uint64_t* processed) {
    if (!scan) return null_argument("scan");
    return guarded([&] {
        const auto n = scan->scan.advance(max_segments ? static_cast<size_t>(max_segments) : SIZE_MAX);
        if (processed) *processed = n;
        return DRL_OK;
    });
}

int drl_scan_done(const drl_scan* scan) { return scan && scan->scan.done(); }

uint64_t drl_scan_next_lo(const drl_scan* scan) { return scan ? scan->scan.next_lo() : 0; }

drl_status drl_scan_best(const drl_scan* scan, drl_run* out) {
    if (!scan) return null_argument("scan");
    if (!out) return null_argument("out");
    *out = to_c(scan->scan.best());
    return DRL_OK;
}

drl_status drl_scan_save_checkpoint(const drl_scan* scan, const char* path) {
    if (!scan) return null_argument("scan");
    if (!path) return null_argument("path");
    return guarded([&] {
        drl::write_checkpoint(scan->scan.checkpoint(), path);
        return DRL_OK;
    });
}

size_t drl_scan_milestone_count(const drl_scan* scan) { return scan ? scan->scan.milestones().size() : 0; }

drl_status drl_scan_milestone(const drl_scan* scan, size_t index, uint64_t* n, drl_run* best) {
    if (!scan) return null_argument("scan");
    const auto& ms = scan->scan.milestones();
    if (index >= ms.size()) {
        g_last_error = "milestone index out of range";
        return DRL_E_INVALID_ARGUMENT;
    }
    if (n) *n = ms[index].n;
    if (best) *best = to_c(ms[index].best);
    return DRL_OK;
}

drl_status drl_scan_render(const drl_scan* scan, drl_format format, char** out) {
    if (!scan) return null_argument("scan");
    if (!out) return null_argument("out");
    return guarded([&] {
        const auto& ms = scan->scan.milestones();
        *out = dup_string(format == DRL_FORMAT_JSON ? drl::render_scan_json(ms, scan->scan.census())
                                                    : drl::render_scan_csv(ms));
        return DRL_OK;
    });
}

drl_status drl_scan_render_census(const drl_scan* scan, char** out) {
    if (!scan) return null_argument("scan");
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = dup_string(drl::render_census_csv(scan->scan.census()));
        return DRL_OK;
    });
}

drl_status drl_checkpoint_milestones(const char* checkpoint_path, uint64_t n, uint64_t* ns, drl_run* runs,
                                     size_t capacity, size_t* count) {
    if (!checkpoint_path) return null_argument("checkpoint_path");
    if (!count) return null_argument("count");
    if (capacity && (!ns || !runs)) return null_argument("ns/runs");
    return guarded([&] {
        const auto ck = drl::read_checkpoint(checkpoint_path);
        size_t k = 0;
        bool reached = false;
        for (const auto& m : ck.milestones) {
            if (m.n > n) break;
            if (k < capacity) {
                ns[k] = m.n;
                runs[k] = to_c(m.best);
            }
            ++k;
            reached = reached || m.n == n;
        }
        *count = k;
        if (!reached) {
            g_last_error = "N = " + std::to_string(n) + " has not been sieved in this checkpoint";
            return DRL_E_DOMAIN;
        }
        if (k > capacity) return DRL_E_BUFFER_TOO_SMALL;
        return DRL_OK;
    });
}

// ------------------------------------------------------------ bounds

drl_bound_params drl_bound_params_default(void) {
    const drl::BoundParams p;
    return {p.c, p.c1, p.c2, p.eps};
}

drl_status drl_bound_params_digest(const drl_bound_params* params, char out[17]) {
    if (!out) return null_argument("out");
    return guarded([&] {
        const auto d = bound_params(params).digest();
        std::memcpy(out, d.c_str(), 17);
        return DRL_OK;
    });
}

drl_status drl_f_of_k(double k, double n, const drl_bound_params* params, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = drl::f_of_k(k, n, bound_params(params));
        return DRL_OK;
    });
}

drl_status drl_eq3_gap(double k, double n, const drl_bound_params* params, double* gap, int* vacuous) {
    if (!gap) return null_argument("gap");
    return guarded([&] {
        const auto g = drl::eq3_gap(k, n, bound_params(params));
        *gap = g.gap;
        if (vacuous) *vacuous = g.vacuous;
        return DRL_OK;
    });
}

drl_status drl_bound_theorem1(double n, const drl_bound_params* params, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = drl::bound_theorem1(n, bound_params(params));
        return DRL_OK;
    });
}

drl_status drl_bound_explicit(double n, double eps, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = drl::bound_explicit(n, eps);
        return DRL_OK;
    });
}

drl_status drl_bound_theorem2(double n, const drl_bound_params* params, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = drl::bound_theorem2(n, bound_params(params));
        return DRL_OK;
    });
}

drl_status drl_bounds_compare(uint64_t n, uint64_t ell, const drl_bound_params* params, drl_bound_comparison* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        const auto c = drl::compare(n, ell, bound_params(params));
        *out = {c.n, c.ell, c.theorem1, c.explicit_bound, c.theorem2, c.theorem1_ok, c.explicit_ok, c.theorem2_ok};
        return DRL_OK;
    });
}

drl_status drl_bounds_render_csv(const drl_bound_comparison* rows, size_t count, const drl_bound_params* params,
                                 char** out) {
    if (count && !rows) return null_argument("rows");
    if (!out) return null_argument("out");
    return guarded([&] {
        std::vector<drl::BoundComparison> v;
        for (size_t i = 0; i < count; ++i) {
            const auto& r = rows[i];
            v.push_back({r.n, r.ell, r.theorem1, r.explicit_bound, r.theorem2, r.theorem1_ok != 0, r.explicit_ok != 0,
                         r.theorem2_ok != 0});
        }
        *out = dup_string(drl::render_bounds_csv(v, bound_params(params)));
        return DRL_OK;
    });
}

// ------------------------------------------------------------ lemma checks

drl_status drl_lemma_parse(const char* name, drl_lemma* out) {
    if (!name) return null_argument("name");
    if (!out) return null_argument("out");
    const auto id = drl::parse_lemma(name);
    if (!id) {
        g_last_error = std::string("unknown lemma '") + name + "'";
        return DRL_E_INVALID_ARGUMENT;
    }
    *out = static_cast<drl_lemma>(*id);
    return DRL_OK;
}

const char* drl_lemma_name(drl_lemma lemma) {
    if (lemma < DRL_LEMMA_L1 || lemma > DRL_LEMMA_RUNDIV) return "?";
    return drl::lemma_name(static_cast<drl::LemmaId>(lemma)).data();
}

int drl_lemma_is_exact(drl_lemma lemma) { return drl::lemma_is_exact(static_cast<drl::LemmaId>(lemma)); }

drl_status drl_verify(drl_lemma lemma, const drl_verify_config* config, drl_lemma_report** out) {
    if (!out) return null_argument("out");
    if (lemma < DRL_LEMMA_L1 || lemma > DRL_LEMMA_RUNDIV) {
        g_last_error = "unknown lemma id";
        return DRL_E_INVALID_ARGUMENT;
    }
    return guarded([&] {
        drl::VerifyOptions opts;
        if (config) {
            if (config->max) opts.max = config->max;
            opts.seed = config->seed;
            opts.threads = config->threads ? config->threads : 1;
        }
        *out = new drl_lemma_report{drl::run_lemma(static_cast<drl::LemmaId>(lemma), opts)};
        return DRL_OK;
    });
}

void drl_lemma_report_destroy(drl_lemma_report* report) { delete report; }

int drl_lemma_report_pass(const drl_lemma_report* report) { return report && report->report.pass(); }

size_t drl_lemma_report_violation_count(const drl_lemma_report* report) {
    return report ? report->report.violations.size() : 0;
}

drl_status drl_lemma_report_json(const drl_lemma_report* report, char** out) {
    if (!report) return null_argument("report");
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = dup_string(drl::lemma_report_json(report->report));
        return DRL_OK;
    });
}

drl_status drl_check_lemma6(uint64_t n, double* lhs, uint64_t* rhs, int* pass) {
    return guarded([&] {
        const auto c = drl::check_lemma6(n);
        if (lhs) *lhs = c.lhs;
        if (rhs) *rhs = c.rhs;
        if (pass) *pass = c.pass;
        return DRL_OK;
    });
}

drl_status drl_check_eq8(uint64_t k, uint64_t* lhs, uint64_t* rhs, int* pass) {
    return guarded([&] {
        const auto c = drl::check_eq8(k);
        if (lhs) *lhs = c.lhs;
        if (rhs) *rhs = c.rhs;
        if (pass) *pass = c.pass;
        return DRL_OK;
    });
}

drl_status drl_check_eq5(uint64_t p, uint64_t lo, uint64_t hi, uint64_t n, uint64_t* lhs, double* rhs, int* pass) {
    return guarded([&] {
        const auto c = drl::check_eq5(p, {lo, hi}, n);
        if (lhs) *lhs = c.lhs;
        if (rhs) *rhs = c.rhs;
        if (pass) *pass = c.pass;
        return DRL_OK;
    });
}

// ------------------------------------------------------------ Jacobsthal

drl_status drl_jacobsthal_exact(const uint64_t* primes, size_t count, uint64_t budget, unsigned threads,
                                drl_jacobsthal_profile* out) {
    if (count && !primes) return null_argument("primes");
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = to_c(drl::jacobsthal_exact({primes, count}, jacobsthal_options(budget, threads)));
        return DRL_OK;
    });
}

drl_status drl_jacobsthal_primorial(uint64_t m, uint64_t budget, unsigned threads, drl_jacobsthal_profile* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = to_c(drl::jacobsthal_primorial(m, jacobsthal_options(budget, threads)));
        return DRL_OK;
    });
}

drl_status drl_jacobsthal_table_create(uint64_t max_m, uint64_t budget, unsigned threads, int truncate,
                                       drl_jacobsthal_table** out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = new drl_jacobsthal_table{drl::jacobsthal_table(max_m, jacobsthal_options(budget, threads), truncate != 0)};
        return DRL_OK;
    });
}

void drl_jacobsthal_table_destroy(drl_jacobsthal_table* table) { delete table; }

size_t drl_jacobsthal_table_size(const drl_jacobsthal_table* table) { return table ? table->table.rows.size() : 0; }

int drl_jacobsthal_table_truncated(const drl_jacobsthal_table* table) { return table && table->table.truncated; }

drl_status drl_jacobsthal_table_row(const drl_jacobsthal_table* table, size_t index, uint64_t* m,
                                    drl_jacobsthal_profile* profile) {
    if (!table) return null_argument("table");
    if (index >= table->table.rows.size()) {
        g_last_error = "row index out of range";
        return DRL_E_INVALID_ARGUMENT;
    }
    const auto& row = table->table.rows[index];
    if (m) *m = row.m;
    if (profile) *profile = to_c(row.profile);
    return DRL_OK;
}

drl_status drl_jacobsthal_table_render(const drl_jacobsthal_table* table, drl_format format, char** out) {
    if (!table) return null_argument("table");
    if (!out) return null_argument("out");
    return guarded([&] {
        if (format == DRL_FORMAT_CSV) {
            *out = dup_string(drl::jacobsthal_table_csv(table->table));
            return DRL_OK;
        }
        auto rows = nlohmann::ordered_json::array();
        for (const auto& r : table->table.rows)
            rows.push_back({{"M", r.m},
                            {"primorial", r.profile.modulus.get_str()},
                            {"j", r.profile.j_value},
                            {"witness_start", r.profile.witness_gap_start}});
        *out = dup_string(rows.dump(2) + "\n");
        return DRL_OK;
    });
}

drl_status drl_coprime_witness(uint64_t lo, uint64_t hi, uint64_t m, uint64_t* witness, int* found) {
    if (!witness || !found) return null_argument("witness/found");
    return guarded([&] {
        const auto w = drl::coprime_witness({lo, hi}, m);
        *found = w.has_value();
        *witness = w.value_or(0);
        return DRL_OK;
    });
}

drl_status drl_largest_m_with_j_at_most(uint64_t k, uint64_t* m, int* table_limited) {
    if (!m) return null_argument("m");
    return guarded([&] {
        const auto sel = drl::largest_m_with_j_at_most(k);
        *m = sel.m;
        if (table_limited) *table_limited = sel.table_limited;
        return DRL_OK;
    });
}

}  // extern "C"
