#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "lovx/json_io.hpp"

namespace lovx::cli {

// args excludes the program name. Writes one JSON report to `out` (or to
// --out). Returns 0 on success, 1 on computational failure or invalid
// input, 2 on usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Report without its timing field, serialized; used for determinism checks.
std::string strip_timing(const std::string& report);

}  // namespace lovx::cli
