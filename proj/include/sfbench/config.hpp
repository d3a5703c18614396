#pragma once

#include "sfbench/runner.hpp"

#include <filesystem>
#include <string_view>

namespace sfbench {

// Scenario config files carry link profiles in wire units (ms, %, Mbit/s).
// Unknown keys are rejected; errors are Error(Config) naming the key path.
// A relative CSV path is resolved against `base_dir`.
ScenarioConfig parse_config(std::string_view json_text,
                            const std::filesystem::path& base_dir = {});
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace sfbench
