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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qob/cli/config.hpp"
#include "qob/observables.hpp"

namespace qob::cli {

/// Fully resolved configuration as an ordered JSON object.
nlohmann::ordered_json config_json(const RunConfig& cfg);

/// CSV `t,sigma_z,trace_err,purity` with `#` metadata lines, qubit starting in |e>.
void cmd_dynamics(const RunConfig& cfg, std::ostream& out);

/// JSON report of the sampled non-Markovianity.
void cmd_nonmarkov(const RunConfig& cfg, std::ostream& out);

/// JSON with η, the steady-state prediction and, when cfg.simulate, the
/// HEOM mean over [0.8 t_max, t_max] and its gap to the prediction.
void cmd_steady(const RunConfig& cfg, std::ostream& out);

struct SweepSpec {
    std::string key = "lambda_over_gamma";
    std::vector<std::string> values{"0.1", "0.3", "0.5", "1", "2"};
};

/// Non-Markovianity at every sweep point plus a non-increasing verdict.
void cmd_sweep(const RunConfig& cfg, const SweepSpec& sweep, std::ostream& out);

/// Mean of <σz> over [0.8 t_max, t_max].
double long_time_mean(const Trajectory& tr, double t_max);

/// Full command-line entry point. Returns the process exit code:
/// 0 ok, 2 configuration error, 3 invariant breach, 4 convergence failure,
/// 1 anything else.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qob::cli
