#pragma once

#include <string>

namespace afmtj {

// All data files are written via temp-file + rename so partial outputs never
// land under the final name.
void atomic_write_file(const std::string& path, const std::string& content);

// Shortest round-trippable decimal form of a double.
std::string format_double(double v);

std::string read_file(const std::string& path);

}  // namespace afmtj
