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

#ifndef TBESIM_CONFIG_HPP
#define TBESIM_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tbesim {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// Large-scale gain convention for the UMi path-loss expression.
//  - kDbRatio: beta = 10^(-PL_dB/10), the conventional dB-to-linear mapping.
//  - kInverseDb: beta = 1/PL_dB, the expression read literally.
// The dB-ratio form reproduces the reference operating points (SINRs of a
// few tens, tag SERs on the unit scale); the literal form yields SINRs of
// ~1e7 and drives every error probability to zero across the whole power
// box, so it is kept only as a switch for side-by-side inspection.
enum class PathLossModel { kDbRatio, kInverseDb };

// Normalization of the null-space AN basis vectors.
//  - kUnitTotalPower:  v_i = v~_i / (sqrt(N_AN) ||v~_i||), total AN power 1.
//  - kLiteral:         v_i = v~_i / (N_AN ||v~_i||), total AN power 1/N_AN.
enum class AnNormalization { kUnitTotalPower, kLiteral };

// All scenario scalars. Config-file units: powers dBm, frequencies GHz,
// bandwidth MHz, kappa dB, distances/heights m, angles degrees. Everything
// is converted to linear units once at load; all internal math is linear.
struct SystemConfig {
    int num_antennas = 64;        // M
    int num_users = 4;            // K (= number of eavesdroppers)
    int block_len = 160;          // T slots per block
    double tx_power_dbm = 5.0;    // P_T
    double carrier_ghz = 2.4;     // f_c
    double bandwidth_mhz = 300.0; // BW
    double thermal_noise_dbm_hz = -174.0; // N0
    double noise_figure_db = 9.0;         // NF
    double ue_height_m = 100.0;   // h_UE
    double eve_height_m = 80.0;   // h_EVE
    double ue_dist_min_m = 10.0;  // l_min
    double ue_dist_max_m = 100.0; // l_max
    double rician_kappa_db = 30.0;         // kappa
    double angle_offset_deg = 1.0;         // Delta theta
    int key_bits = 64;
    double pf_target = 1e-3;      // false-alarm budget selecting eta
    double antenna_spacing_wavelengths = 0.5; // d_s / lambda
    PathLossModel path_loss = PathLossModel::kDbRatio;
    AnNormalization an_norm = AnNormalization::kUnitTotalPower;
    bool resample_geometry_per_block = false;

    double tx_power_mw() const { return db_to_linear(tx_power_dbm); }
    double kappa_linear() const { return db_to_linear(rician_kappa_db); }
    double wavelength_m() const { return 299792458.0 / (carrier_ghz * 1e9); }
    double antenna_spacing_m() const { return antenna_spacing_wavelengths * wavelength_m(); }
    int num_an_dims() const { return num_antennas - num_users; }

    // Noise power over the signal bandwidth, in linear mW:
    // sigma_n^2 = 10^((N0 + 10 lg BW + NF)/10). Table II values give -80.23 dBm.
    double noise_power_mw() const {
        return db_to_linear(thermal_noise_dbm_hz + 10.0 * std::log10(bandwidth_mhz * 1e6) +
                            noise_figure_db);
    }

    void validate() const;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses a flat key-value config ("key = value", '#' comments). Keys are the
// Table II parameter names; unknown keys are hard errors naming the line.
SystemConfig parse_config_text(const std::string& text, SystemConfig base = {});
SystemConfig load_config_file(const std::string& path, SystemConfig base = {});

// Amplitude pairs (rho_m, rho_t) and (phi_s, phi_n) with unit power split.
struct PowerSplit {
    double rho_m = 1.0, rho_t = 0.0;
    double phi_s = 1.0, phi_n = 0.0;
};

// Optimization variables rho = rho_m^2 and phi = phi_s^2, both in (0, 1].
struct PowerAllocation {
    double rho = 1.0;
    double phi = 1.0;

    PowerSplit split() const {
        PowerSplit s;
        s.rho_m = std::sqrt(rho);
        s.rho_t = std::sqrt(1.0 - rho);
        s.phi_s = std::sqrt(phi);
        s.phi_n = std::sqrt(1.0 - phi);
        return s;
    }
};

}  // namespace tbesim

#endif
