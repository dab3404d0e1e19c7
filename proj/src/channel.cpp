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

#include "tbesim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace tbesim::channel {

double path_loss_db(double distance_m, double carrier_ghz) {
    if (distance_m <= 0.0) throw std::domain_error("path loss needs a positive distance");
    if (!(carrier_ghz > 0.5 && carrier_ghz < 100.0))
        throw std::domain_error("carrier outside the UMi model validity range");
    return 32.4 + 21.0 * std::log10(distance_m) + 20.0 * std::log10(carrier_ghz);
}

double path_loss_beta(double distance_m, double carrier_ghz, PathLossModel model) {
    const double pl = path_loss_db(distance_m, carrier_ghz);
    if (model == PathLossModel::kInverseDb) return 1.0 / pl;
    return db_to_linear(-pl);
}

arma::cx_vec steering_vector(double elevation_rad, int num_antennas, double spacing_m,
                             double wavelength_m) {
    arma::cx_vec v(num_antennas);
    const double phase_step = -2.0 * arma::datum::pi * spacing_m / wavelength_m *
                              std::sin(elevation_rad);
    for (int m = 0; m < num_antennas; ++m) {
        v[m] = std::polar(1.0, phase_step * m);
    }
    return v;
}

arma::cx_vec draw_channel(double elevation_rad, double kappa_linear, int num_antennas,
                          double spacing_m, double wavelength_m, Rng& rng) {
    if (kappa_linear < 0.0) throw std::domain_error("kappa must be nonnegative");
    arma::cx_vec h = std::sqrt(kappa_linear / (kappa_linear + 1.0)) *
                     steering_vector(elevation_rad, num_antennas, spacing_m, wavelength_m);
    const double w = std::sqrt(1.0 / (kappa_linear + 1.0));
    for (int m = 0; m < num_antennas; ++m) {
        h[m] += w * rng.cnormal();
    }
    return h;
}

namespace {

GeometryScenario derive_geometry(const SystemConfig& cfg, const arma::vec& l) {
    GeometryScenario g;
    const int K = cfg.num_users;
    g.ue_horiz_m = l;
    g.ue_elev_rad.set_size(K);
    g.eve_elev_rad.set_size(K);
    g.ue_dist_m.set_size(K);
    g.eve_dist_m.set_size(K);
    g.beta.set_size(K);
    g.alpha.set_size(K);
    g.gamma.set_size(K);
    const double offset = cfg.angle_offset_deg * arma::datum::pi / 180.0;
    for (int u = 0; u < K; ++u) {
        g.ue_elev_rad[u] = std::atan(cfg.ue_height_m / l[u]);
        g.eve_elev_rad[u] = g.ue_elev_rad[u] + offset;
        g.ue_dist_m[u] = std::hypot(l[u], cfg.ue_height_m);
        g.eve_dist_m[u] = cfg.eve_height_m / std::sin(g.eve_elev_rad[u]);
        g.beta[u] = path_loss_beta(g.ue_dist_m[u], cfg.carrier_ghz, cfg.path_loss);
        g.alpha[u] = path_loss_beta(g.eve_dist_m[u], cfg.carrier_ghz, cfg.path_loss);
        const arma::cx_vec hu = steering_vector(g.ue_elev_rad[u], cfg.num_antennas,
                                                cfg.antenna_spacing_m(), cfg.wavelength_m());
        const arma::cx_vec ge = steering_vector(g.eve_elev_rad[u], cfg.num_antennas,
                                                cfg.antenna_spacing_m(), cfg.wavelength_m());
        g.gamma[u] = std::abs(arma::cdot(hu, ge));
    }
    g.beta_tilde = 1.0 / arma::sum(1.0 / g.beta);
    return g;
}

}  // namespace

GeometryScenario draw_geometry(const SystemConfig& cfg, Rng& rng) {
    arma::vec l(cfg.num_users);
    for (int u = 0; u < cfg.num_users; ++u) {
        l[u] = rng.uniform(cfg.ue_dist_min_m, cfg.ue_dist_max_m);
    }
    return derive_geometry(cfg, l);
}

GeometryScenario geometry_from_distances(const SystemConfig& cfg, const arma::vec& ue_horiz_m) {
    if (static_cast<int>(ue_horiz_m.n_elem) != cfg.num_users)
        throw std::invalid_argument("need one horizontal distance per user");
    return derive_geometry(cfg, ue_horiz_m);
}

ChannelRealization build_realization(const SystemConfig& cfg, const GeometryScenario& geom,
                                     Rng& rng) {
    const int M = cfg.num_antennas;
    const int K = cfg.num_users;
    const double kappa = cfg.kappa_linear();
    const double ds = cfg.antenna_spacing_m();
    const double lambda = cfg.wavelength_m();

    ChannelRealization rz;
    rz.beta = geom.beta;
    rz.alpha = geom.alpha;
    rz.gamma = geom.gamma;
    rz.beta_tilde = geom.beta_tilde;
    rz.H.set_size(M, K);
    rz.G.set_size(M, K);
    for (int u = 0; u < K; ++u) {
        rz.H.col(u) = draw_channel(geom.ue_elev_rad[u], kappa, M, ds, lambda, rng);
        rz.G.col(u) = draw_channel(geom.eve_elev_rad[u], kappa, M, ds, lambda, rng);
    }

    // Unnormalized ZF: W~ = H (H^H H)^{-1}, then per-user balancing so that
    // sum ||w_k||^2 = 1 and beta_u ||w_u||^2 = beta~.
    const arma::cx_mat gram = rz.H.t() * rz.H;
    arma::cx_mat w_raw;
    if (!arma::solve(w_raw, gram.st(), rz.H.st(), arma::solve_opts::no_approx)) {
        throw RankDeficientError("H^H H is singular (coincident user angles)");
    }
    arma::cx_mat w_tilde = w_raw.st();  // M x K
    rz.W.set_size(M, K);
    for (int u = 0; u < K; ++u) {
        const double scale = std::sqrt((1.0 / rz.beta[u]) * rz.beta_tilde) /
                             arma::norm(w_tilde.col(u));
        rz.W.col(u) = scale * w_tilde.col(u);
    }

    // Null-space AN basis from the orthonormal complement of col(H): the
    // trailing M-K columns of the full QR factor.
    arma::cx_mat q, r;
    if (!arma::qr(q, r, rz.H)) {
        throw RankDeficientError("QR factorization of H failed");
    }
    for (int u = 0; u < K; ++u) {
        if (std::abs(r(u, u)) < 1e-12 * std::sqrt(static_cast<double>(M))) {
            throw RankDeficientError("H is rank deficient");
        }
    }
    const int n_an = M - K;
    rz.V = q.cols(K, M - 1);  // orthonormal columns
    const double col_scale = (cfg.an_norm == AnNormalization::kUnitTotalPower)
                                 ? 1.0 / std::sqrt(static_cast<double>(n_an))
                                 : 1.0 / static_cast<double>(n_an);
    rz.V *= col_scale;
    return rz;
}

}  // namespace tbesim::channel
