#include "drl/report.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

namespace drl {

std::string format_real(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string render_scan_csv(const std::vector<Milestone>& milestones) {
    std::ostringstream out;
    out << "N,ell_N,run_start,run_d\n";
    for (const auto& m : milestones)
        out << m.n << ',' << m.best.length << ',' << m.best.start << ',' << m.best.divisor_count << '\n';
    return out.str();
}

std::string render_census_csv(const RunCensus& census) {
    std::ostringstream out;
    out << "length,first_start,count\n";
    for (const auto& [len, e] : census) out << len << ',' << e.first_start << ',' << e.count << '\n';
    return out.str();
}

std::string render_scan_json(const std::vector<Milestone>& milestones, const RunCensus& census) {
    nlohmann::ordered_json j;
    auto runs = nlohmann::ordered_json::array();
    for (const auto& m : milestones)
        runs.push_back({{"N", m.n}, {"start", m.best.start}, {"length", m.best.length}, {"divisor_count", m.best.divisor_count}});
    auto cen = nlohmann::ordered_json::array();
    for (const auto& [len, e] : census) cen.push_back({{"length", len}, {"first_start", e.first_start}, {"count", e.count}});
    j["runs"] = runs;
    j["census"] = cen;
    return j.dump(2) + "\n";
}

std::string render_bounds_csv(const std::vector<BoundComparison>& rows, const BoundParams& params) {
    const std::string digest = params.digest();
    std::ostringstream out;
    out << "N,ell,theorem1,explicit,theorem2,params_digest\n";
    for (const auto& r : rows)
        out << r.n << ',' << r.ell << ',' << format_real(r.theorem1) << ',' << format_real(r.explicit_bound) << ','
            << format_real(r.theorem2) << ',' << digest << '\n';
    return out.str();
}

}  // namespace drl
