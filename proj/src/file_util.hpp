#pragma once

#include <string>
#include <string_view>

namespace drl::detail {

// Writes to a sibling temp file and renames it over `path`, so readers never
// observe a partial file.
void write_file_atomic(const std::string& path, std::string_view contents);
std::string read_file(const std::string& path);

}  // namespace drl::detail
