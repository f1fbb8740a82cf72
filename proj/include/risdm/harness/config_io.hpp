#ifndef RISDM_HARNESS_CONFIG_IO_HPP
#define RISDM_HARNESS_CONFIG_IO_HPP

#include <filesystem>

#include "risdm/scenario.hpp"

namespace risdm {

// Reads a scenario configuration from a JSON tree. Missing keys fall back to
// the full-size defaults; unknown keys are rejected with their path; an
// empty file yields the defaults unchanged.
ScenarioConfig load_config(const std::filesystem::path& path);

// Full round-trip serialization of a configuration.
void save_config(const ScenarioConfig& cfg, const std::filesystem::path& path);

std::string config_to_json(const ScenarioConfig& cfg);
ScenarioConfig config_from_json(const std::string& text);

}  // namespace risdm

#endif
