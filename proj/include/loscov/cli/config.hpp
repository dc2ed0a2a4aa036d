#pragma once

// Run configuration: one JSON document with the sections heights,
// blockage, pathloss, deployment, sweep, mc and output. Any leaf can be overridden from the command
// line by its dotted name (--heights.h-ap 30).

#include "loscov/model.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace loscov::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json default_config();

/// Dotted names of every overridable leaf, e.g. "heights.h_ap".
std::vector<std::string> config_keys();

/// Reads a config document (or a run manifest, whose "config" member is
/// used) and merges it over the defaults. Unknown keys are rejected.
nlohmann::json load_config(const std::filesystem::path& path);

/// Merges `patch` over `base`, rejecting keys the defaults do not have.
void merge_config(nlohmann::json& base, const nlohmann::json& patch, const std::string& where = "");

/// Sets a leaf from its command-line text. The text is parsed as JSON when
/// possible ("[3, 30]", "0.5", "true") and taken as a string otherwise.
/// Dashes in the key are read as underscores.
void apply_override(nlohmann::json& cfg, const std::string& dotted_key, const std::string& text);

/// Expands a sweep value: an explicit list, a single number, or an object
/// {start, stop, step} (stop inclusive). Throws ConfigError when empty.
std::vector<double> expand_sweep(const nlohmann::json& v, const std::string& name);

// Typed views of the config sections.
HeightProfile low_profile(const nlohmann::json& cfg);
HeightProfile high_profile(const nlohmann::json& cfg);
BlockageParams blockage_params(const nlohmann::json& cfg);
PathLossParams pathloss_params(const nlohmann::json& cfg);
LambdaConvention lambda_convention(const nlohmann::json& cfg);

}  // namespace loscov::cli
