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

#include <CLI11.hpp>

#include "tbesim/presets.hpp"

int main(int argc, char** argv) {
    CLI::App app{"tbe-sim: tag-based-encoding link simulator and optimizer"};
    app.require_subcommand(1);

    tbesim::presets::ExperimentArgs args;
    for (const auto& name : tbesim::presets::preset_names()) {
        auto* sub = app.add_subcommand(name, "run the '" + name + "' experiment preset");
        sub->add_option("--config", args.config_path, "key-value config file (Table defaults otherwise)");
        sub->add_option("--seed", args.seed, "master seed for deployment and trials");
        sub->add_option("--trials", args.trials, "Monte Carlo blocks per sweep point");
        sub->add_option("--out", args.out_dir, "output directory for CSV files");
        sub->add_flag("--strict", args.strict, "exit 4 when a theory/sim cell fails at 3 sigma");
        sub->callback([&args, name] { args.preset = name; });
    }

    CLI11_PARSE(app, argc, argv);
    return tbesim::presets::run_experiment(args);
}
