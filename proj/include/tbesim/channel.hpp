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

#ifndef TBESIM_CHANNEL_HPP
#define TBESIM_CHANNEL_HPP

#include <armadillo>

#include "tbesim/config.hpp"
#include "tbesim/rng.hpp"

namespace tbesim::channel {

// UMi path loss in dB: 32.4 + 21 lg d + 20 lg f_c, valid for
// 0.5 GHz < f_c < 100 GHz.
double path_loss_db(double distance_m, double carrier_ghz);

// Large-scale gain beta for one link, under the selected convention.
double path_loss_beta(double distance_m, double carrier_ghz,
                      PathLossModel model = PathLossModel::kDbRatio);

// ULA steering vector: element m = exp(-j 2 pi d_s/lambda m sin(theta)),
// m = 0..M-1. Squared norm is exactly M.
arma::cx_vec steering_vector(double elevation_rad, int num_antennas,
                             double spacing_m, double wavelength_m);

// Rician draw: sqrt(k/(k+1)) h_LoS + sqrt(1/(k+1)) h_NLoS with i.i.d.
// CN(0,1) scattered entries.
arma::cx_vec draw_channel(double elevation_rad, double kappa_linear, int num_antennas,
                          double spacing_m, double wavelength_m, Rng& rng);

// Per-deployment quantities that depend only on positions (no fading).
struct GeometryScenario {
    arma::vec ue_horiz_m;     // K horizontal distances l_u
    arma::vec ue_elev_rad;    // theta_u = arctan(h_UE / l_u)
    arma::vec eve_elev_rad;   // vartheta_e = theta_e + delta
    arma::vec ue_dist_m;      // d_u = sqrt(l^2 + h_UE^2)
    arma::vec eve_dist_m;     // d_e = h_EVE / sin(vartheta_e)
    arma::vec beta;           // K legitimate large-scale gains
    arma::vec alpha;          // K wiretap large-scale gains
    arma::vec gamma;          // Gamma_e = |h_LoS(theta_u)^H h_LoS(vartheta_e)|
    double beta_tilde = 0.0;  // 1 / sum_k beta_k^-1
};

// Draws user horizontal distances uniform on [l_min, l_max] and derives all
// angles, distances and gains. Eavesdropper e pairs with user u = e at the
// offset elevation and height h_EVE.
GeometryScenario draw_geometry(const SystemConfig& cfg, Rng& rng);

// Same derivation for externally fixed horizontal distances.
GeometryScenario geometry_from_distances(const SystemConfig& cfg, const arma::vec& ue_horiz_m);

struct ChannelRealization {
    arma::cx_mat H;  // M x K legitimate channels
    arma::cx_mat G;  // M x K wiretap channels
    arma::cx_mat W;  // M x K balanced, power-normalized ZF precoder
    arma::cx_mat V;  // M x N_AN null-space AN basis
    arma::vec beta;
    arma::vec alpha;
    arma::vec gamma;
    double beta_tilde = 0.0;
};

struct RankDeficientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fresh fading draw plus ZF precoder and AN basis. Throws RankDeficientError
// when H^H H is numerically singular (coincident user angles under pure LoS).
ChannelRealization build_realization(const SystemConfig& cfg, const GeometryScenario& geom,
                                     Rng& rng);

}  // namespace tbesim::channel

#endif
