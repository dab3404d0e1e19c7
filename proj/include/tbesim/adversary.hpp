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

#ifndef TBESIM_ADVERSARY_HPP
#define TBESIM_ADVERSARY_HPP

#include <armadillo>
#include <optional>

#include "tbesim/channel.hpp"
#include "tbesim/tbe.hpp"

// The adversary path never sees KeyMaterial: eavesdroppers cannot regenerate
// tags and decode with the wiretapped tag instead.
namespace tbesim::adversary {

struct EveBlock {
    arma::cx_mat c_hat;  // T x K detected ciphertext, column e for eavesdropper e
    arma::mat t_hat;     // T x K detected tag symbols, +-1
    arma::cx_mat s_hat;  // T x K decode attempts, s^ = c^ .* t^
};

struct CombineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Wiretap reception: Y_E^H = sqrt(P_T) D_E^{1/2} G^H (phi_s W X^H + phi_n V Z^H) + N_E^H,
// with fresh AN draws Z and AWGN. X carries one column per user.
// Returns Y_E (T x K).
arma::cx_mat eve_receive(const channel::ChannelRealization& rz, const arma::cx_mat& tx_signals,
                         const PowerSplit& split, double tx_power_mw, double noise_power_mw,
                         Rng& rng);

// Right-inverse combining:
// Y~_E = (1/(phi_s sqrt(P_T))) Y_E D_E^{-1/2} G^H W (W^H G G^H W)^{-1}.
// With zero noise and no AN this returns X exactly. Throws CombineError when
// W^H G G^H W is numerically singular.
arma::cx_mat eve_combine(const arma::cx_mat& y_eve, const channel::ChannelRealization& rz,
                         const PowerSplit& split, double tx_power_mw);

// Same per-slot minimum-distance rules as the legitimate receiver, then
// S^ = C^ .* T^ (no regeneration; the key is unavailable here).
EveBlock eve_detect_and_decode(const arma::cx_mat& y_tilde, double rho_m, double rho_t);

// Jamming block: uniformly random message symbols with uniformly random tags,
// composed exactly like a legitimate transmit block.
arma::cx_vec make_jamming_signal(int block_len, const PowerSplit& split, Rng& rng);

}  // namespace tbesim::adversary

#endif
