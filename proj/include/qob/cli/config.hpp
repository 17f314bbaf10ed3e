// Copyright 2026 The qobath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Run configuration: named scenario presets, flat JSON config files and
// key=value overrides, resolved in that order.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qob/errors.hpp"
#include "qob/model.hpp"

namespace qob::cli {

class ConfigError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::optional<std::string> scenario;
    SystemParams params;
    std::string output_path;  // empty: stdout
    int record_every = 10;
    int n_samples = 100;
    std::uint64_t seed = 20261016;
    double t_c = 50.0;
    bool simulate = false;
    /// Pick L by converge_depth instead of params.hierarchy_depth.
    bool auto_depth = false;
    double converge_tol = 1e-3;

    bool operator==(const RunConfig&) const = default;
};

/// Sorted list of preset names.
std::vector<std::string> scenario_names();

/// Preset for `name`; throws ConfigError for unknown names.
RunConfig scenario_preset(const std::string& name);

/// Applies key=value pairs in order. Plain keys are set first; the derived
/// keys `zeta` (sets omega0 = g0/zeta, or g0 = 0 when zeta = 0) and
/// `lambda_over_gamma` (sets lambda) are resolved last against the final
/// g0 and gamma.
void apply_overrides(RunConfig& cfg, const std::vector<std::pair<std::string, std::string>>& kv);

/// Splits "key=value"; throws ConfigError when '=' is missing.
std::pair<std::string, std::string> parse_assignment(const std::string& s);

/// Reads a flat JSON object of key: value pairs. A "scenario" entry is
/// returned separately so it can be resolved before the other keys; a
/// "derived" entry is ignored, so the config block embedded in any output
/// reads back as a config file.
struct ConfigFile {
    std::optional<std::string> scenario;
    std::vector<std::pair<std::string, std::string>> entries;
};
ConfigFile read_config_file(const std::string& path);

/// Keys accepted by apply_overrides and config files.
const std::vector<std::string>& known_keys();

}  // namespace qob::cli
