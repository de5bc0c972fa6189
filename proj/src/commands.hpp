#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace orbitreach {

/// Names accepted by run_command.
const std::vector<std::string>& command_names();

/// Runs one subcommand. Options are the CLI flags as JSON (spec path,
/// seed, budget, ...); the report always carries "schema", "command" and
/// "passed". CSV and DOT side files go to options["out"] when present.
nlohmann::json run_command(const std::string& name, const nlohmann::json& options);

}  // namespace orbitreach
