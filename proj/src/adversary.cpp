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

#include "tbesim/adversary.hpp"

#include "tbesim/receiver.hpp"

namespace tbesim::adversary {

arma::cx_mat eve_receive(const channel::ChannelRealization& rz, const arma::cx_mat& tx_signals,
                         const PowerSplit& split, double tx_power_mw, double noise_power_mw,
                         Rng& rng) {
    const int T = static_cast<int>(tx_signals.n_rows);
    const int K = static_cast<int>(tx_signals.n_cols);
    const int n_an = static_cast<int>(rz.V.n_cols);

    // Projected transmit components: one K x K signal mixing matrix and one
    // K x N_AN AN projection per receiver set.
    const arma::cx_mat gw = rz.G.t() * rz.W;  // G^H W, K x K
    arma::cx_mat y = tx_signals * (split.phi_s * gw.t());  // X (phi_s W^H G)
    if (split.phi_n > 0.0) {
        const arma::cx_mat gv = rz.G.t() * rz.V;  // G^H V, K x N_AN
        arma::cx_mat z(T, n_an);
        for (int t = 0; t < T; ++t) {
            for (int i = 0; i < n_an; ++i) z(t, i) = rng.cnormal();
        }
        y += z * (split.phi_n * gv.t());
    }
    for (int e = 0; e < K; ++e) {
        y.col(e) *= std::sqrt(tx_power_mw * rz.alpha[e]);
    }
    if (noise_power_mw > 0.0) {
        for (int e = 0; e < K; ++e) {
            for (int t = 0; t < T; ++t) y(t, e) += rng.cnormal(noise_power_mw);
        }
    }
    return y;
}

arma::cx_mat eve_combine(const arma::cx_mat& y_eve, const channel::ChannelRealization& rz,
                         const PowerSplit& split, double tx_power_mw) {
    const arma::cx_mat gw = rz.G.t() * rz.W;          // G^H W, K x K
    const arma::cx_mat gram = gw.t() * gw;            // W^H G G^H W
    arma::cx_mat inv_gram;
    if (!arma::inv(inv_gram, gram) || !gram.is_finite()) {
        throw CombineError("W^H G G^H W is singular");
    }
    arma::cx_mat scaled = y_eve;
    for (std::size_t e = 0; e < scaled.n_cols; ++e) {
        scaled.col(e) /= std::sqrt(rz.alpha[e]);      // Y_E D_E^{-1/2}
    }
    const double norm = 1.0 / (split.phi_s * std::sqrt(tx_power_mw));
    return norm * scaled * gw * inv_gram;
}

EveBlock eve_detect_and_decode(const arma::cx_mat& y_tilde, double rho_m, double rho_t) {
    EveBlock blk;
    const int K = static_cast<int>(y_tilde.n_cols);
    blk.c_hat.set_size(y_tilde.n_rows, K);
    blk.t_hat.set_size(y_tilde.n_rows, K);
    blk.s_hat.set_size(y_tilde.n_rows, K);
    for (int e = 0; e < K; ++e) {
        const arma::cx_vec col = y_tilde.col(e);
        const arma::cx_vec c_hat = receiver::detect_ciphertext(col, rho_m);
        const arma::vec t_hat = receiver::detect_embedded_tag(col, c_hat, rho_m, rho_t);
        blk.c_hat.col(e) = c_hat;
        blk.t_hat.col(e) = t_hat;
        for (std::size_t t = 0; t < col.n_elem; ++t) {
            blk.s_hat(t, e) = t_hat[t] * c_hat[t];
        }
    }
    return blk;
}

arma::cx_vec make_jamming_signal(int block_len, const PowerSplit& split, Rng& rng) {
    const auto& cons = tbe::message_constellation();
    arma::cx_vec x(block_len);
    for (int t = 0; t < block_len; ++t) {
        const std::complex<double> s = cons[rng.index(4)];
        const double tag = rng.bit() ? 1.0 : -1.0;
        x[t] = split.rho_m * tag * s + split.rho_t * tag;
    }
    return x;
}

}  // namespace tbesim::adversary
