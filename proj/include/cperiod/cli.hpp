#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace cperiod::cli {

/// Subcommand names in dispatch order.
const std::vector<std::string>& commands();

/// Validates config (rejecting unknown fields), runs config["command"], writes
/// the report to config["output"] (stdout when absent) and returns the exit
/// code: 0 success, 2 validation error, 3 numerical failure. Errors are
/// reported as {"error": {kind, category, message}} on err and, when set, in
/// config["error_output"].
int run(const nlohmann::json& config, std::ostream& out, std::ostream& err);

/// Parses command-line flags into a config (flags override --config files) and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cperiod::cli
