#pragma once

#include <map>
#include <string>
#include <vector>

#include "macc/env/environment.hpp"
#include "macc/rl/training_config.hpp"

namespace macc::harness {

/// Flat key = value configuration. '#' starts a comment; blank lines are
/// skipped; keys are dotted lowercase. Ordered map so serialization is
/// deterministic.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text, const std::string& origin);
ConfigMap load_config_file(const std::string& path);

/// Applies one "key=value" override (CLI --set).
void apply_override(ConfigMap& map, const std::string& assignment);

/// The whole run description: scenario, learning setup, experiment
/// matrix, output location. Every field has a default; every default is
/// overridable by a config key.
struct HarnessConfig {
    env::EnvConfig env{};
    rl::TrainingConfig train{};
    std::string outdir = "out";
    bool info_records = true;
    std::vector<std::string> cells;  // experiment matrix entries
    std::vector<std::uint64_t> seeds = {1};

    /// Parses and validates; unknown keys and malformed values throw
    /// std::invalid_argument naming the offending key.
    static HarnessConfig from_map(const ConfigMap& map);

    /// Fully resolved key set (defaults materialized) for provenance.
    ConfigMap to_map() const;
};

/// Writes `map` as a config file (sorted keys, one per line).
void write_config_file(const ConfigMap& map, const std::string& path);

}  // namespace macc::harness
