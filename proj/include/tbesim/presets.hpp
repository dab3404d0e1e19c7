// SPDX-License-Identifier: Apache-2.0
//
// tbe-sim: link-level simulation and power-allocation toolkit for a
// tag-based-encoding physical-layer security scheme in a massive-MIMO
// UAV downlink.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef TBESIM_PRESETS_HPP
#define TBESIM_PRESETS_HPP

#include <string>
#include <vector>

#include "tbesim/channel.hpp"
#include "tbesim/config.hpp"
#include "tbesim/theory.hpp"

namespace tbesim::presets {

// Exit codes of the experiment front-end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitAcceptanceFailure = 4;

struct ExperimentArgs {
    std::string preset;
    std::string config_path;   // empty = Table II defaults
    std::uint64_t seed = 1;
    std::uint64_t trials = 20000;
    std::string out_dir = ".";
    bool strict = false;       // exit 4 when a theory/sim 3-sigma cell fails
};

const std::vector<std::string>& preset_names();

// Classical secrecy rate of the prior AN-aided tag-embedding scheme: same
// ZF precoder, AN and tag embedding, but no tag-based encoding, so the
// eavesdropper rate enters unweighted while the user rate keeps the P_d
// weight. Per-user terms are clipped at zero.
double baseline_no_tbe(const SystemConfig& cfg, const channel::GeometryScenario& geom,
                       const PowerAllocation& p);

// Runs one preset, writes its CSV file(s) under args.out_dir and a summary
// to stdout. Returns one of the exit codes above.
int run_experiment(const ExperimentArgs& args);

}  // namespace tbesim::presets

#endif
