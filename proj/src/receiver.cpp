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

#include "tbesim/receiver.hpp"

#include <stdexcept>

namespace tbesim::receiver {

arma::cx_vec normalize_rx(const arma::cx_vec& y, const PowerSplit& split, double tx_power_mw,
                          double beta_tilde, int num_antennas) {
    if (split.phi_s <= 0.0) throw std::domain_error("phi_s = 0 makes the normalization degenerate");
    const double scale = split.phi_s * std::sqrt(tx_power_mw * beta_tilde * num_antennas);
    return y / scale;
}

arma::cx_vec detect_ciphertext(const arma::cx_vec& y_tilde, double rho_m) {
    if (rho_m <= 0.0) throw std::domain_error("rho_m must be positive for detection");
    const auto& cons = tbe::message_constellation();
    arma::cx_vec c_hat(y_tilde.n_elem);
    for (std::size_t t = 0; t < y_tilde.n_elem; ++t) {
        int best = 0;
        double best_dist = std::abs(y_tilde[t] - rho_m * cons[0]);
        for (int c = 1; c < 4; ++c) {
            const double dist = std::abs(y_tilde[t] - rho_m * cons[c]);
            if (dist < best_dist) {
                best_dist = dist;
                best = c;
            }
        }
        c_hat[t] = cons[best];
    }
    return c_hat;
}

arma::vec detect_embedded_tag(const arma::cx_vec& y_tilde, const arma::cx_vec& c_hat,
                              double rho_m, double rho_t) {
    if (rho_t < 0.0) throw std::domain_error("rho_t must be nonnegative");
    // rho_t = 0 degenerates to a tie on every slot; the +1 tie-break then
    // yields the expected coin-flip tag error rate.
    arma::vec t_hat(y_tilde.n_elem);
    for (std::size_t t = 0; t < y_tilde.n_elem; ++t) {
        const std::complex<double> r = y_tilde[t] - rho_m * c_hat[t];
        const double d_plus = std::abs(r - rho_t);
        const double d_minus = std::abs(r + rho_t);
        t_hat[t] = (d_plus <= d_minus) ? 1.0 : -1.0;
    }
    return t_hat;
}

arma::vec regenerate_tag(const tbe::KeyMaterial& key, const arma::cx_vec& c_hat) {
    const BitString feature = tbe::extract_feature(c_hat);
    return tbe::tag_symbols(tbe::generate_tag(key, feature, static_cast<int>(c_hat.n_elem)));
}

AuthDecision authenticate(const arma::vec& t_hat, const arma::vec& t_tilde, int eta) {
    if (eta < 0 || eta > static_cast<int>(t_hat.n_elem))
        throw std::domain_error("threshold outside 0..T");
    AuthDecision d;
    d.threshold = eta;
    for (std::size_t t = 0; t < t_hat.n_elem; ++t) {
        if ((t_hat[t] > 0.0) != (t_tilde[t] > 0.0)) ++d.statistic;
    }
    d.authentic = d.statistic <= eta;
    return d;
}

std::pair<arma::cx_vec, BitString> decode_plaintext(const arma::cx_vec& c_hat,
                                                    const arma::vec& t_tilde) {
    arma::cx_vec s_hat(c_hat.n_elem);
    for (std::size_t t = 0; t < c_hat.n_elem; ++t) s_hat[t] = t_tilde[t] * c_hat[t];
    return {s_hat, tbe::demodulate_message(s_hat)};
}

RxBlock process_block(const arma::cx_vec& y_tilde, const tbe::KeyMaterial& key,
                      const PowerSplit& split, int eta) {
    RxBlock rx;
    rx.y_tilde = y_tilde;
    rx.c_hat = detect_ciphertext(y_tilde, split.rho_m);
    rx.residual = y_tilde - split.rho_m * rx.c_hat;
    rx.t_hat = detect_embedded_tag(y_tilde, rx.c_hat, split.rho_m, split.rho_t);
    rx.t_tilde = regenerate_tag(key, rx.c_hat);
    rx.decision = authenticate(rx.t_hat, rx.t_tilde, eta);
    if (rx.decision.authentic) {
        std::tie(rx.s_hat, rx.m_hat) = decode_plaintext(rx.c_hat, rx.t_tilde);
    }
    return rx;
}

}  // namespace tbesim::receiver
