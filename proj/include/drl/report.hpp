#pragma once

#include <string>
#include <vector>

#include "drl/bounds.hpp"
#include "drl/sieve.hpp"

namespace drl {

// Shortest round-trip decimal, '.' separator, locale independent.
std::string format_real(double v);

std::string render_scan_csv(const std::vector<Milestone>& milestones);
std::string render_census_csv(const RunCensus& census);
std::string render_scan_json(const std::vector<Milestone>& milestones, const RunCensus& census);
std::string render_bounds_csv(const std::vector<BoundComparison>& rows, const BoundParams& params);

}  // namespace drl
