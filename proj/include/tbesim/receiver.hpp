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

#ifndef TBESIM_RECEIVER_HPP
#define TBESIM_RECEIVER_HPP

#include <armadillo>

#include "tbesim/tbe.hpp"

namespace tbesim::receiver {

struct AuthDecision {
    int statistic = 0;  // L = Hamming distance between detected and regenerated tags
    int threshold = 0;  // eta
    bool authentic = false;  // H1 iff L <= eta
};

// Full receive-side state of one block.
struct RxBlock {
    arma::cx_vec y_tilde;   // normalized received block
    arma::cx_vec c_hat;     // detected ciphertext
    arma::cx_vec residual;  // y_tilde - rho_m c_hat
    arma::vec t_hat;        // detected tag, entries +-1
    arma::vec t_tilde;      // regenerated tag, entries +-1
    AuthDecision decision;
    arma::cx_vec s_hat;     // decoded plaintext (valid when authentic)
    BitString m_hat;        // demodulated message bits (valid when authentic)
};

// y / (phi_s sqrt(P_T beta~ M)). Throws std::domain_error when phi_s == 0.
arma::cx_vec normalize_rx(const arma::cx_vec& y, const PowerSplit& split, double tx_power_mw,
                          double beta_tilde, int num_antennas);

// Per-slot minimum-distance ciphertext detection against rho_m * X_m.
// Distance ties break toward the lowest constellation index.
arma::cx_vec detect_ciphertext(const arma::cx_vec& y_tilde, double rho_m);

// Residual tag detection: r = y~ - rho_m c^, then per-slot argmin over
// {-1,+1} of |r - rho_t t|. A zero residual breaks toward +1.
arma::vec detect_embedded_tag(const arma::cx_vec& y_tilde, const arma::cx_vec& c_hat,
                              double rho_m, double rho_t);

// t~ = tag symbols of hash(key, feature(c^)).
arma::vec regenerate_tag(const tbe::KeyMaterial& key, const arma::cx_vec& c_hat);

// L = number of sign mismatches; authentic (H1) iff L <= eta.
AuthDecision authenticate(const arma::vec& t_hat, const arma::vec& t_tilde, int eta);

// s^ = t~ .* c^, then hard demap. Contract: only called on authentic blocks.
std::pair<arma::cx_vec, BitString> decode_plaintext(const arma::cx_vec& c_hat,
                                                    const arma::vec& t_tilde);

// Runs the whole chain on a normalized block.
RxBlock process_block(const arma::cx_vec& y_tilde, const tbe::KeyMaterial& key,
                      const PowerSplit& split, int eta);

}  // namespace tbesim::receiver

#endif
