// drl: command-line front end over the libdrl C API.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "drl/drl.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum Exit : int {
    kOk = 0,
    kInternal = 1,
    kConfig = 2,
    kMismatch = 3,
    kNotSieved = 4,
    kViolation = 5,
    kBudget = 6,
};

struct Failure {
    int code;
    std::string message;
};

int exit_for(drl_status s) {
    switch (s) {
        case DRL_OK: return kOk;
        case DRL_E_INVALID_ARGUMENT:
        case DRL_E_DOMAIN:
        case DRL_E_CAPACITY:
        case DRL_E_IO: return kConfig;
        case DRL_E_CHECKPOINT_MISMATCH: return kMismatch;
        case DRL_E_BUDGET: return kBudget;
        default: return kInternal;
    }
}

void check(drl_status s) {
    if (s != DRL_OK) throw Failure{exit_for(s), std::string(drl_status_name(s)) + ": " + drl_last_error()};
}

std::string take(char* s) {
    std::string out(s ? s : "");
    drl_string_free(s);
    return out;
}

// Exact integer from "1000000", "1e6", "2.5e3" or "1_000_000"; fractions are rejected.
std::uint64_t parse_natural(const std::string& text, const std::string& flag) {
    std::string digits;
    long long point = -1;
    std::size_t i = 0;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch >= '0' && ch <= '9') {
            digits.push_back(ch);
        } else if (ch == '.' && point < 0) {
            point = static_cast<long long>(digits.size());
        } else if (ch == '_' || ch == '\'') {
            continue;
        } else {
            break;
        }
    }
    long long exponent = 0;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') throw Failure{kConfig, flag + ": not an integer: " + text};
        const std::string tail = text.substr(i + 1);
        if (tail.empty() || tail.find_first_not_of("+0123456789") != std::string::npos)
            throw Failure{kConfig, flag + ": bad exponent: " + text};
        exponent = std::stoll(tail);
    }
    if (digits.empty()) throw Failure{kConfig, flag + ": not an integer: " + text};
    if (point >= 0) exponent -= static_cast<long long>(digits.size()) - point;
    while (exponent < 0) {
        if (digits.empty() || digits.back() != '0') throw Failure{kConfig, flag + ": fractional value rejected: " + text};
        digits.pop_back();
        ++exponent;
    }
    if (exponent > 20) throw Failure{kConfig, flag + ": out of range: " + text};
    digits.append(static_cast<std::size_t>(exponent), '0');
    const auto first = digits.find_first_not_of('0');
    digits = first == std::string::npos ? "0" : digits.substr(first);
    if (digits.size() > 20 || (digits.size() == 20 && digits > "18446744073709551615"))
        throw Failure{kConfig, flag + ": out of range: " + text};
    return std::stoull(digits);
}

unsigned default_threads() {
    if (const char* env = std::getenv("DRL_THREADS"); env && *env) {
        const auto v = parse_natural(env, "DRL_THREADS");
        if (v == 0 || v > 4096) throw Failure{kConfig, "DRL_THREADS must be in [1, 4096]"};
        return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string real(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_atomic(const fs::path& path, const std::string& data) {
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Failure{kConfig, "cannot write " + path.string()};
        f << data;
        f.flush();
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Failure{kConfig, "write failed: " + path.string()};
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Failure{kConfig, "cannot rename into " + path.string()};
    }
}

struct Common {
    std::string n_text;
    std::string window;
    std::string segment_width_text;
    std::optional<unsigned> threads;
    std::string format = "csv";
    std::string out;
    std::string seed_text = "20240601";
    std::string checkpoint;
    std::string resume;

    std::uint64_t seed = 20240601;
    unsigned thread_count = 1;
    drl_bound_params params{};
    std::vector<std::pair<std::string, std::string>> echo;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
    std::string started_utc = utc_now();

    void finish(const std::string& command) {
        seed = parse_natural(seed_text, "--seed");
        thread_count = threads ? *threads : default_threads();
        if (thread_count == 0) throw Failure{kConfig, "--threads must be positive"};
        if (format != "csv" && format != "json") throw Failure{kConfig, "--format must be csv or json"};
        double probe = 0;
        check(drl_bound_theorem1(16, &params, &probe));
        check(drl_bound_explicit(16, params.eps, &probe));
        echo.insert(echo.begin(), {"command", command});
        echo.push_back({"threads", std::to_string(thread_count)});
        echo.push_back({"format", format});
        if (!out.empty()) echo.push_back({"out", out});
        if (!checkpoint.empty()) echo.push_back({"checkpoint", checkpoint});
        if (!resume.empty()) echo.push_back({"resume", resume});
    }

    drl_format fmt() const { return format == "json" ? DRL_FORMAT_JSON : DRL_FORMAT_CSV; }

    std::string digest() const {
        char d[17];
        check(drl_bound_params_digest(&params, d));
        return d;
    }

    std::string config_line() const {
        std::string s;
        for (const auto& [k, v] : echo) s += (s.empty() ? "" : " ") + k + "=" + v;
        return s;
    }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }

    std::string csv_meta() const {
        std::ostringstream m;
        m << "# drl " << drl_version() << "\n";
        m << "# config: " << config_line() << "\n";
        m << "# seed: " << seed << "\n";
        m << "# started: " << started_utc << " elapsed_s: " << elapsed() << "\n";
        m << "# params_digest: " << digest() << "\n";
        return m.str();
    }

    json json_meta() const {
        json cfg = json::object();
        for (const auto& [k, v] : echo) cfg[k] = v;
        return {{"version", drl_version()},
                {"config", cfg},
                {"seed", seed},
                {"started", started_utc},
                {"elapsed_s", elapsed()},
                {"params_digest", digest()}};
    }

    void emit(const std::string& text, const std::string& path) const {
        if (path.empty()) {
            std::cout << text;
            std::cout.flush();
        } else {
            write_atomic(path, text);
        }
    }
};

struct ScanTarget {
    std::uint64_t lo = 1;
    std::uint64_t n = 0;
    std::uint64_t width = 0;
};

ScanTarget scan_target(Common& c, bool required) {
    ScanTarget t;
    if (!c.n_text.empty() && !c.window.empty()) throw Failure{kConfig, "give either --n or --window, not both"};
    if (!c.window.empty()) {
        const auto colon = c.window.find(':');
        if (colon == std::string::npos) throw Failure{kConfig, "--window expects LO:HI"};
        t.lo = parse_natural(c.window.substr(0, colon), "--window");
        const auto hi = parse_natural(c.window.substr(colon + 1), "--window");
        if (t.lo < 1 || hi <= t.lo) throw Failure{kConfig, "--window needs 1 <= LO < HI"};
        t.n = hi - 1;
        c.echo.push_back({"window", std::to_string(t.lo) + ":" + std::to_string(hi)});
    } else if (!c.n_text.empty()) {
        t.n = parse_natural(c.n_text, "--n");
        if (t.n < 1) throw Failure{kConfig, "--n must be >= 1"};
        c.echo.push_back({"n", std::to_string(t.n)});
    } else if (required) {
        throw Failure{kConfig, "--n or --window is required"};
    }
    t.width = c.segment_width_text.empty() ? 0 : parse_natural(c.segment_width_text, "--segment-width");
    if (!c.segment_width_text.empty() && t.width == 0) throw Failure{kConfig, "--segment-width must be positive"};
    c.echo.push_back({"segment_width", t.width ? std::to_string(t.width) : "default"});
    return t;
}

using ScanPtr = std::unique_ptr<drl_scan, decltype(&drl_scan_destroy)>;

// Opens the scan, resuming when the resume file exists.
ScanPtr open_scan(const Common& c, const ScanTarget& t) {
    const drl_scan_config cfg{t.lo, t.n, t.width, c.thread_count};
    drl_scan* raw = nullptr;
    if (!c.resume.empty() && fs::exists(c.resume))
        check(drl_scan_resume(&cfg, c.resume.c_str(), &raw));
    else
        check(drl_scan_create(&cfg, &raw));
    return ScanPtr(raw, &drl_scan_destroy);
}

// Advances in batches of `threads` segments, checkpointing after each batch.
// Returns false if it stopped early because of stop_after.
bool drive(drl_scan* scan, const Common& c, std::uint64_t stop_after) {
    const std::string ck = c.checkpoint.empty() ? c.resume : c.checkpoint;
    std::uint64_t budget = stop_after;
    while (!drl_scan_done(scan)) {
        std::uint64_t step = c.thread_count;
        if (stop_after) {
            if (budget == 0) break;
            step = std::min(step, budget);
        }
        std::uint64_t processed = 0;
        check(drl_scan_advance(scan, step, &processed));
        if (stop_after) budget -= processed;
        if (!ck.empty()) check(drl_scan_save_checkpoint(scan, ck.c_str()));
    }
    if (!ck.empty()) check(drl_scan_save_checkpoint(scan, ck.c_str()));
    return drl_scan_done(scan) != 0;
}

std::vector<std::pair<std::uint64_t, drl_run>> milestones_of(const drl_scan* scan) {
    std::vector<std::pair<std::uint64_t, drl_run>> out;
    for (std::size_t i = 0; i < drl_scan_milestone_count(scan); ++i) {
        std::uint64_t n = 0;
        drl_run r{};
        check(drl_scan_milestone(scan, i, &n, &r));
        out.push_back({n, r});
    }
    return out;
}

// --------------------------------------------------------------- scan

int cmd_scan(Common& c, std::uint64_t stop_after) {
    const ScanTarget t = scan_target(c, true);
    if (stop_after) c.echo.push_back({"stop_after", std::to_string(stop_after)});
    c.finish("scan");
    if (stop_after && c.checkpoint.empty() && c.resume.empty())
        throw Failure{kConfig, "--stop-after needs --checkpoint or --resume to be useful"};

    ScanPtr scan = open_scan(c, t);
    if (!drive(scan.get(), c, stop_after)) {
        std::cerr << "drl scan: stopped at " << drl_scan_next_lo(scan.get()) << " of " << t.n
                  << "; rerun with --resume to continue\n";
        return kOk;
    }

    if (c.fmt() == DRL_FORMAT_JSON) {
        char* raw = nullptr;
        check(drl_scan_render(scan.get(), DRL_FORMAT_JSON, &raw));
        json body = json::parse(take(raw));
        json doc;
        doc["meta"] = c.json_meta();
        doc["runs"] = body["runs"];
        doc["census"] = body["census"];
        c.emit(doc.dump(2) + "\n", c.out);
        return kOk;
    }

    char* raw = nullptr;
    check(drl_scan_render(scan.get(), DRL_FORMAT_CSV, &raw));
    const std::string table = take(raw);
    check(drl_scan_render_census(scan.get(), &raw));
    const std::string census = take(raw);
    const std::string meta = c.csv_meta();
    if (c.out.empty()) {
        c.emit(meta + table + "# census\n" + census, "");
    } else {
        // Census first, so the ℓ table only appears once both are on disk.
        c.emit(meta + census, c.out + ".census.csv");
        c.emit(meta + table, c.out);
    }
    return kOk;
}

// --------------------------------------------------------------- bounds

int cmd_bounds(Common& c, bool no_sieve) {
    const ScanTarget t = scan_target(c, true);
    if (t.lo != 1) throw Failure{kConfig, "bounds needs --n (the ℓ table always starts at 1)"};
    if (t.n < 100) throw Failure{kConfig, "bounds needs N >= 100"};
    if (no_sieve) c.echo.push_back({"no_sieve", "true"});
    c.finish("bounds");

    std::vector<std::pair<std::uint64_t, drl_run>> ms;
    if (no_sieve) {
        const std::string ck = c.checkpoint.empty() ? c.resume : c.checkpoint;
        if (ck.empty() || !fs::exists(ck)) throw Failure{kNotSieved, "--no-sieve: no checkpoint to read"};
        std::vector<std::uint64_t> ns(64);
        std::vector<drl_run> runs(64);
        std::size_t count = 0;
        const drl_status s = drl_checkpoint_milestones(ck.c_str(), t.n, ns.data(), runs.data(), ns.size(), &count);
        if (s == DRL_E_DOMAIN) throw Failure{kNotSieved, std::string("--no-sieve: ") + drl_last_error()};
        check(s);
        for (std::size_t i = 0; i < std::min(count, ns.size()); ++i) ms.push_back({ns[i], runs[i]});
    } else {
        ScanPtr scan = open_scan(c, t);
        drive(scan.get(), c, 0);
        ms = milestones_of(scan.get());
    }

    std::vector<drl_bound_comparison> rows;
    for (const auto& [n, run] : ms) {
        drl_bound_comparison row{};
        check(drl_bounds_compare(n, run.length, &c.params, &row));
        rows.push_back(row);
    }
    bool dominated = true;
    for (const auto& r : rows) dominated = dominated && r.theorem1_ok && r.explicit_ok;
    if (!dominated) std::cerr << "drl bounds: some row exceeds theorem1 or explicit\n";

    if (c.fmt() == DRL_FORMAT_JSON) {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"N", r.n},
                           {"ell", r.ell},
                           {"theorem1", r.theorem1},
                           {"explicit", r.explicit_bound},
                           {"theorem2", r.theorem2},
                           {"theorem1_ok", r.theorem1_ok != 0},
                           {"explicit_ok", r.explicit_ok != 0},
                           {"theorem2_ok", r.theorem2_ok != 0}});
        json doc;
        doc["meta"] = c.json_meta();
        doc["meta"]["theorem2_note"] = "constant unverified";
        doc["rows"] = arr;
        c.emit(doc.dump(2) + "\n", c.out);
        return kOk;
    }
    char* raw = nullptr;
    check(drl_bounds_render_csv(rows.data(), rows.size(), &c.params, &raw));
    c.emit(c.csv_meta() + "# theorem2: constant unverified\n" + take(raw), c.out);
    return kOk;
}

// --------------------------------------------------------------- verify

int cmd_verify(Common& c, const std::vector<std::string>& lemma_names, const std::string& max_text) {
    std::vector<drl_lemma> lemmas;
    if (lemma_names.empty()) {
        for (int i = DRL_LEMMA_L1; i <= DRL_LEMMA_RUNDIV; ++i) lemmas.push_back(static_cast<drl_lemma>(i));
    } else {
        for (const auto& name : lemma_names) {
            drl_lemma id;
            if (drl_lemma_parse(name.c_str(), &id) != DRL_OK) throw Failure{kConfig, "unknown lemma: " + name};
            lemmas.push_back(id);
        }
    }
    const std::uint64_t max = max_text.empty() ? 0 : parse_natural(max_text, "--max");
    if (!max_text.empty() && max == 0) throw Failure{kConfig, "--max must be positive"};
    std::string names;
    for (drl_lemma id : lemmas) names += (names.empty() ? "" : ",") + std::string(drl_lemma_name(id));
    c.echo.push_back({"lemma", names});
    c.echo.push_back({"max", max ? std::to_string(max) : "default"});
    c.finish("verify");

    const drl_verify_config cfg{max, c.seed, c.thread_count};
    json reports = json::array();
    std::vector<std::string> summary;
    bool ok = true;
    for (drl_lemma id : lemmas) {
        drl_lemma_report* raw = nullptr;
        check(drl_verify(id, &cfg, &raw));
        std::unique_ptr<drl_lemma_report, decltype(&drl_lemma_report_destroy)> report(raw, &drl_lemma_report_destroy);
        char* text = nullptr;
        check(drl_lemma_report_json(report.get(), &text));
        json j = json::parse(take(text));
        if (drl_lemma_is_exact(id) && !drl_lemma_report_pass(report.get())) ok = false;
        std::ostringstream line;
        line << j["lemma_id"].get<std::string>() << ',' << j["verdict"].get<std::string>() << ','
             << j["range"]["lo"].get<std::uint64_t>() << ',' << j["range"]["hi"].get<std::uint64_t>() << ','
             << drl_lemma_report_violation_count(report.get()) << ',' << j["worst_residual"]["value"].dump();
        summary.push_back(line.str());
        std::cerr << "drl verify: " << drl_lemma_name(id) << " " << j["verdict"].get<std::string>() << "\n";
        reports.push_back(std::move(j));
    }

    if (c.fmt() == DRL_FORMAT_CSV) {
        std::string body = "lemma_id,verdict,range_lo,range_hi,violations,worst_residual\n";
        for (const auto& s : summary) body += s + "\n";
        c.emit(c.csv_meta() + body, c.out);
    } else {
        json doc;
        doc["meta"] = c.json_meta();
        doc["reports"] = reports;
        c.emit(doc.dump(2) + "\n", c.out);
    }
    return ok ? kOk : kViolation;
}

// --------------------------------------------------------------- jacobsthal

int cmd_jacobsthal(Common& c, const std::string& max_m_text, const std::string& budget_text, bool truncate) {
    const std::uint64_t max_m = max_m_text.empty() ? 19 : parse_natural(max_m_text, "--max-m");
    if (max_m < 2) throw Failure{kConfig, "--max-m must be >= 2"};
    const std::uint64_t budget = budget_text.empty() ? 0 : parse_natural(budget_text, "--budget");
    c.echo.push_back({"max_m", std::to_string(max_m)});
    c.echo.push_back({"budget", budget ? std::to_string(budget) : "default"});
    c.echo.push_back({"truncate", truncate ? "true" : "false"});
    c.finish("jacobsthal");

    drl_jacobsthal_table* raw = nullptr;
    const drl_status s = drl_jacobsthal_table_create(max_m, budget, c.thread_count, truncate ? 1 : 0, &raw);
    if (s == DRL_E_BUDGET)
        throw Failure{kBudget, std::string(drl_last_error()) + " (use --truncate to stop at the budget)"};
    check(s);
    std::unique_ptr<drl_jacobsthal_table, decltype(&drl_jacobsthal_table_destroy)> table(raw,
                                                                                        &drl_jacobsthal_table_destroy);
    if (drl_jacobsthal_table_truncated(table.get())) std::cerr << "drl jacobsthal: table truncated at the budget\n";
    char* text = nullptr;
    check(drl_jacobsthal_table_render(table.get(), c.fmt(), &text));
    const std::string body = take(text);
    if (c.fmt() == DRL_FORMAT_JSON) {
        json doc;
        doc["meta"] = c.json_meta();
        doc["meta"]["truncated"] = drl_jacobsthal_table_truncated(table.get()) != 0;
        doc["rows"] = json::parse(body);
        c.emit(doc.dump(2) + "\n", c.out);
    } else {
        const std::string trunc = drl_jacobsthal_table_truncated(table.get()) ? "# truncated: true\n" : "";
        c.emit(c.csv_meta() + trunc + body, c.out);
    }
    return kOk;
}

// --------------------------------------------------------------- report

// ℓ table and bound rows read back from a checkpoint, no sieving.
int cmd_report(Common& c) {
    const ScanTarget t = scan_target(c, true);
    const std::string ck = c.checkpoint.empty() ? c.resume : c.checkpoint;
    if (ck.empty()) throw Failure{kConfig, "report needs --checkpoint PATH"};
    c.finish("report");
    if (!fs::exists(ck)) throw Failure{kNotSieved, "no checkpoint at " + ck};

    std::vector<std::uint64_t> ns(64);
    std::vector<drl_run> runs(64);
    std::size_t count = 0;
    const drl_status s = drl_checkpoint_milestones(ck.c_str(), t.n, ns.data(), runs.data(), ns.size(), &count);
    if (s == DRL_E_DOMAIN) throw Failure{kNotSieved, drl_last_error()};
    check(s);
    count = std::min(count, ns.size());

    json arr = json::array();
    std::ostringstream csv;
    csv << "N,ell_N,run_start,run_d,theorem1,explicit,theorem2,theorem1_ok,explicit_ok\n";
    for (std::size_t i = 0; i < count; ++i) {
        drl_bound_comparison row{};
        check(drl_bounds_compare(ns[i], runs[i].length, &c.params, &row));
        csv << ns[i] << ',' << runs[i].length << ',' << runs[i].start << ',' << runs[i].divisor_count << ','
            << real(row.theorem1) << ',' << real(row.explicit_bound) << ',' << real(row.theorem2) << ','
            << row.theorem1_ok << ',' << row.explicit_ok << '\n';
        arr.push_back({{"N", ns[i]},
                       {"ell", runs[i].length},
                       {"start", runs[i].start},
                       {"divisor_count", runs[i].divisor_count},
                       {"theorem1", row.theorem1},
                       {"explicit", row.explicit_bound},
                       {"theorem2", row.theorem2},
                       {"theorem1_ok", row.theorem1_ok != 0},
                       {"explicit_ok", row.explicit_ok != 0}});
    }
    if (c.fmt() == DRL_FORMAT_JSON) {
        json doc;
        doc["meta"] = c.json_meta();
        doc["rows"] = arr;
        c.emit(doc.dump(2) + "\n", c.out);
    } else {
        c.emit(c.csv_meta() + csv.str(), c.out);
    }
    return kOk;
}

// --------------------------------------------------------------- no command

void print_summary() {
    const drl_bound_params p = drl_bound_params_default();
    std::cout << "drl " << drl_version() << ": runs of consecutive integers with equal divisor count\n\n"
              << "commands:\n"
              << "  scan        segmented d(n) sieve over [1, N], ℓ_N table and run census, checkpoint/resume\n"
              << "  bounds      ℓ_N against the three upper bounds at N = 10^2, 10^3, ..., N\n"
              << "  verify      exact checkers (L1 L6 EQ5 EQ8 RUNDIV) and trend monitors (L2-L5)\n"
              << "  jacobsthal  j(M#) for primes M up to --max-m, within a residue budget\n"
              << "  report      ℓ_N table and bounds read back from a checkpoint\n\n"
              << "bounds (defaults C = " << p.c << ", C1 = " << p.c1 << ", C2 = " << p.c2 << ", eps = " << p.eps
              << "):\n"
              << "  theorem1:  ℓ_N <= exp(C·sqrt(log N · log log N))\n"
              << "  explicit:  ℓ_N <= exp(sqrt((1/2 + eps) · log N · log log N))\n"
              << "  theorem2:  ℓ_N <= exp(C·(log N · log log N)^(1/3))   (constant unverified)\n\n"
              << "exit codes: 0 ok, 1 internal, 2 config, 3 checkpoint mismatch, 4 not sieved,\n"
              << "            5 checker violation, 6 budget exceeded\n"
              << "run `drl <command> --help` for flags\n";
}

void add_common(CLI::App* app, Common& c, bool with_scan, bool with_params) {
    if (with_scan) {
        app->add_option("--n", c.n_text, "last integer N (1e9 style accepted)");
        app->add_option("--window", c.window, "half-open range LO:HI instead of --n");
        app->add_option("--segment-width", c.segment_width_text, "sieve segment width");
        app->add_option("--checkpoint", c.checkpoint, "checkpoint file to write");
        app->add_option("--resume", c.resume, "resume from this checkpoint if it exists");
    }
    if (with_params) {
        app->add_option("--c", c.params.c, "constant C of theorem1/theorem2");
        app->add_option("--c1", c.params.c1, "constant C1");
        app->add_option("--c2", c.params.c2, "constant C2");
        app->add_option("--eps", c.params.eps, "epsilon of the explicit bound");
    }
    app->add_option("--threads", c.threads, "worker threads (default: DRL_THREADS or all cores)");
    app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--out", c.out, "output path (default stdout)");
    app->add_option("--seed", c.seed_text, "seed recorded in the output");
}

void echo_params(Common& c) {
    c.echo.push_back({"c", real(c.params.c)});
    c.echo.push_back({"c1", real(c.params.c1)});
    c.echo.push_back({"c2", real(c.params.c2)});
    c.echo.push_back({"eps", real(c.params.eps)});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"drl: runs of consecutive integers with equal divisor count"};
    app.set_version_flag("--version", std::string(drl_version()));
    app.require_subcommand(0, 1);

    Common c;
    c.params = drl_bound_params_default();

    std::string stop_after_text;
    bool no_sieve = false;
    std::vector<std::string> lemma_names;
    std::string max_text, max_m_text, budget_text;
    bool truncate = false;

    auto* scan = app.add_subcommand("scan", "sieve [1, N] and report the ℓ_N table and run census");
    add_common(scan, c, true, false);
    scan->add_option("--stop-after", stop_after_text, "process this many segments, checkpoint, and stop");

    auto* bounds = app.add_subcommand("bounds", "compare ℓ_N against the upper bounds");
    add_common(bounds, c, true, true);
    bounds->add_flag("--no-sieve", no_sieve, "only read milestones from the checkpoint");

    auto* verify = app.add_subcommand("verify", "run lemma checkers");
    add_common(verify, c, false, false);
    verify->add_option("--lemma", lemma_names, "L1..L6, EQ5, EQ8, RUNDIV (repeatable; default all)");
    verify->add_option("--max", max_text, "range limit (trial count for EQ5)");

    auto* jac = app.add_subcommand("jacobsthal", "table of j(M#)");
    add_common(jac, c, false, false);
    jac->add_option("--max-m", max_m_text, "largest prime M (default 19)");
    jac->add_option("--budget", budget_text, "largest modulus to enumerate (default 2e8)");
    jac->add_flag("--truncate", truncate, "stop at the budget instead of failing");

    auto* report = app.add_subcommand("report", "ℓ_N and bounds from a checkpoint, no sieving");
    add_common(report, c, true, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (scan->parsed()) {
            const std::uint64_t stop = stop_after_text.empty() ? 0 : parse_natural(stop_after_text, "--stop-after");
            return cmd_scan(c, stop);
        }
        if (bounds->parsed()) {
            echo_params(c);
            return cmd_bounds(c, no_sieve);
        }
        if (verify->parsed()) return cmd_verify(c, lemma_names, max_text);
        if (jac->parsed()) return cmd_jacobsthal(c, max_m_text, budget_text, truncate);
        if (report->parsed()) {
            echo_params(c);
            return cmd_report(c);
        }
        print_summary();
        return kOk;
    } catch (const Failure& f) {
        std::cerr << "drl: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "drl: internal error: " << e.what() << "\n";
        return kInternal;
    }
}
