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

#include "tbesim/config.hpp"

#include <fstream>
#include <sstream>

namespace tbesim {

void SystemConfig::validate() const {
    if (num_antennas < 1) throw ConfigError("M must be positive");
    if (num_users < 1) throw ConfigError("K must be positive");
    if (num_users >= num_antennas) throw ConfigError("K must be smaller than M");
    if (block_len < 1) throw ConfigError("T must be positive");
    if (key_bits < 1) throw ConfigError("key bits must be positive");
    if (!(ue_dist_min_m < ue_dist_max_m)) throw ConfigError("l_min must be below l_max");
    if (!(pf_target > 0.0 && pf_target < 1.0)) throw ConfigError("P_f must lie in (0,1)");
    if (!(carrier_ghz > 0.5 && carrier_ghz < 100.0))
        throw ConfigError("f_c outside the 0.5..100 GHz path-loss validity range");
    if (bandwidth_mhz <= 0.0) throw ConfigError("BW must be positive");
    if (ue_height_m <= 0.0 || eve_height_m <= 0.0) throw ConfigError("heights must be positive");
    if (antenna_spacing_wavelengths <= 0.0) throw ConfigError("d_s must be positive");
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return {};
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& value, const std::string& key, int line_no) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line_no) + ": bad value for '" + key + "'");
    }
    if (pos != value.size())
        throw ConfigError("line " + std::to_string(line_no) + ": bad value for '" + key + "'");
    return v;
}

}  // namespace

SystemConfig parse_config_text(const std::string& text, SystemConfig base) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");

        auto num = [&] { return parse_number(value, key, line_no); };
        if (key == "P_T") base.tx_power_dbm = num();
        else if (key == "f_c") base.carrier_ghz = num();
        else if (key == "BW") base.bandwidth_mhz = num();
        else if (key == "N0") base.thermal_noise_dbm_hz = num();
        else if (key == "NF") base.noise_figure_db = num();
        else if (key == "M") base.num_antennas = static_cast<int>(num());
        else if (key == "K") base.num_users = static_cast<int>(num());
        else if (key == "T") base.block_len = static_cast<int>(num());
        else if (key == "h_UE") base.ue_height_m = num();
        else if (key == "h_EVE") base.eve_height_m = num();
        else if (key == "l_min") base.ue_dist_min_m = num();
        else if (key == "l_max") base.ue_dist_max_m = num();
        else if (key == "kappa") base.rician_kappa_db = num();
        else if (key == "Delta_theta") base.angle_offset_deg = num();
        else if (key == "key_bits") base.key_bits = static_cast<int>(num());
        else if (key == "P_f") base.pf_target = num();
        else if (key == "d_s") base.antenna_spacing_wavelengths = num();
        else if (key == "path_loss") {
            if (value == "db_ratio") base.path_loss = PathLossModel::kDbRatio;
            else if (value == "inverse_db") base.path_loss = PathLossModel::kInverseDb;
            else throw ConfigError("line " + std::to_string(line_no) +
                                   ": path_loss must be db_ratio or inverse_db");
        } else if (key == "an_norm") {
            if (value == "sqrt") base.an_norm = AnNormalization::kUnitTotalPower;
            else if (value == "literal") base.an_norm = AnNormalization::kLiteral;
            else throw ConfigError("line " + std::to_string(line_no) +
                                   ": an_norm must be sqrt or literal");
        } else if (key == "resample_geometry") {
            if (value == "per_block") base.resample_geometry_per_block = true;
            else if (value == "per_scenario") base.resample_geometry_per_block = false;
            else throw ConfigError("line " + std::to_string(line_no) +
                                   ": resample_geometry must be per_block or per_scenario");
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    base.validate();
    return base;
}

SystemConfig load_config_file(const std::string& path, SystemConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), base);
}

}  // namespace tbesim
