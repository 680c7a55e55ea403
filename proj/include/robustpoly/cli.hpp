#pragma once

#include <string>
#include <vector>

namespace robustpoly::cli {

/// Dispatches a full command line (excluding the program name).
/// Returns 0 on success, 1 on usage errors, 2 on runtime errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace robustpoly::cli
