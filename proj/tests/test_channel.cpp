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

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tbesim/channel.hpp"

using namespace tbesim;
using Catch::Approx;

TEST_CASE("path loss under both gain conventions") {
    // Literal reciprocal-of-dB values.
    CHECK(channel::path_loss_beta(1.0, 1.0, PathLossModel::kInverseDb) ==
          Approx(0.0308641975309).epsilon(1e-10));
    CHECK(channel::path_loss_beta(100.0, 2.4, PathLossModel::kInverseDb) ==
          Approx(0.012194493662).epsilon(1e-10));
    CHECK(channel::path_loss_beta(10.0, 2.4, PathLossModel::kInverseDb) ==
          Approx(0.0163923072987).epsilon(1e-10));
    // dB-ratio convention used by the link budget.
    CHECK(channel::path_loss_db(100.0, 2.4) == Approx(82.0042248342).epsilon(1e-10));
    CHECK(channel::path_loss_beta(100.0, 2.4) ==
          Approx(std::pow(10.0, -8.20042248342)).epsilon(1e-9));
    CHECK_THROWS_AS(channel::path_loss_beta(0.0, 2.4), std::domain_error);
    CHECK_THROWS_AS(channel::path_loss_beta(-3.0, 2.4), std::domain_error);
    CHECK_THROWS_AS(channel::path_loss_db(10.0, 0.3), std::domain_error);
}

TEST_CASE("steering vector structure") {
    const double lambda = 0.125;
    SECTION("broadside gives all ones") {
        const arma::cx_vec v = channel::steering_vector(0.0, 8, lambda / 2, lambda);
        for (const auto& e : v) CHECK(std::abs(e - std::complex<double>(1.0, 0.0)) < 1e-15);
    }
    SECTION("half-wavelength endfire alternates sign") {
        const arma::cx_vec v =
            channel::steering_vector(arma::datum::pi / 2, 2, lambda / 2, lambda);
        CHECK(std::abs(v[0] - std::complex<double>(1.0, 0.0)) < 1e-12);
        CHECK(std::abs(v[1] + std::complex<double>(1.0, 0.0)) < 1e-12);
    }
    SECTION("unit-modulus entries give squared norm M") {
        for (const double theta : {0.3, 0.9, 1.4}) {
            const arma::cx_vec v = channel::steering_vector(theta, 16, lambda / 2, lambda);
            CHECK(arma::dot(arma::conj(v), v).real() == Approx(16.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("rician draws") {
    const double lambda = 0.125;
    Rng rng(7);
    SECTION("infinite kappa limit reduces to the steering vector") {
        const arma::cx_vec v = channel::draw_channel(0.7, 1e18, 16, lambda / 2, lambda, rng);
        const arma::cx_vec s = channel::steering_vector(0.7, 16, lambda / 2, lambda);
        CHECK(arma::norm(v - s) < 1e-7);
    }
    SECTION("pure scattering has mean squared norm M") {
        const int n = 10000, m = 16;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            acc += std::pow(arma::norm(channel::draw_channel(0.7, 0.0, m, lambda / 2, lambda, rng)), 2);
        }
        const double mean = acc / n;
        // Var ||h||^2 = M for i.i.d. CN entries.
        const double stderr_ = std::sqrt(static_cast<double>(m) / n);
        CHECK(std::abs(mean - m) < 3.0 * stderr_);
    }
    SECTION("30 dB kappa stays close to the LoS component") {
        const int m = 64;
        const arma::cx_vec s = channel::steering_vector(0.7, m, lambda / 2, lambda);
        double acc = 0.0;
        const int n = 200;
        for (int i = 0; i < n; ++i) {
            acc += std::pow(arma::norm(channel::draw_channel(0.7, 1000.0, m, lambda / 2, lambda, rng) - s), 2) / m;
        }
        CHECK(acc / n < 0.01);  // per-element deviation variance ~ 1/(kappa+1)
    }
}

TEST_CASE("realization invariants") {
    SystemConfig cfg;
    cfg.num_antennas = 8;
    cfg.num_users = 3;
    const auto geom = test::default_geometry(cfg);
    Rng rng(11);
    const auto rz = channel::build_realization(cfg, geom, rng);

    SECTION("zero-forcing orthogonality against the pseudo-inverse oracle") {
        for (int u = 0; u < 3; ++u) {
            for (int k = 0; k < 3; ++k) {
                const double leak = std::abs(arma::cdot(rz.H.col(u), rz.W.col(k)));
                if (k != u) CHECK(leak < 1e-10);
            }
        }
    }
    SECTION("power bookkeeping") {
        double total = 0.0;
        for (int k = 0; k < 3; ++k) total += std::pow(arma::norm(rz.W.col(k)), 2);
        CHECK(total == Approx(1.0).epsilon(1e-9));
        for (int u = 0; u < 3; ++u) {
            CHECK(rz.beta[u] * std::pow(arma::norm(rz.W.col(u)), 2) ==
                  Approx(rz.beta_tilde).epsilon(1e-9));
        }
    }
    SECTION("null-space basis annihilates every user channel") {
        CHECK(arma::norm(rz.H.t() * rz.V, "fro") < 1e-10);
        double an_power = 0.0;
        for (std::size_t i = 0; i < rz.V.n_cols; ++i)
            an_power += std::pow(arma::norm(rz.V.col(i)), 2);
        CHECK(an_power == Approx(1.0).epsilon(1e-9));
        CHECK(static_cast<int>(rz.V.n_cols) == cfg.num_antennas - cfg.num_users);
    }
    SECTION("literal AN normalization splits total power by N_AN") {
        SystemConfig lit = cfg;
        lit.an_norm = AnNormalization::kLiteral;
        Rng r2(11);
        const auto rz2 = channel::build_realization(lit, geom, r2);
        double an_power = 0.0;
        for (std::size_t i = 0; i < rz2.V.n_cols; ++i)
            an_power += std::pow(arma::norm(rz2.V.col(i)), 2);
        CHECK(an_power == Approx(1.0 / (cfg.num_antennas - cfg.num_users)).epsilon(1e-9));
    }
}

TEST_CASE("gamma correlation bounds") {
    SystemConfig cfg;
    SECTION("matched angles give gamma = M") {
        SystemConfig c = cfg;
        c.angle_offset_deg = 0.0;
        const auto geom = test::default_geometry(c);
        for (const double g : geom.gamma) CHECK(g == Approx(c.num_antennas).epsilon(1e-12));
    }
    SECTION("offset angles stay inside [0, M]") {
        for (const double dth : {0.5, 1.0, 3.0, 7.0}) {
            SystemConfig c = cfg;
            c.angle_offset_deg = dth;
            const auto geom = test::default_geometry(c);
            for (const double g : geom.gamma) {
                CHECK(g >= 0.0);
                CHECK(g <= c.num_antennas + 1e-9);
                CHECK(g < c.num_antennas - 1e-6);  // strict once angles differ
            }
        }
    }
}

TEST_CASE("single-user ZF degenerates to a matched filter") {
    SystemConfig cfg;
    cfg.num_antennas = 8;
    cfg.num_users = 1;
    const auto geom = test::default_geometry(cfg);
    Rng rng(3);
    const auto rz = channel::build_realization(cfg, geom, rng);
    // w_1 is h_1 / ||h_1|| up to a phase.
    const double align = std::abs(arma::cdot(rz.H.col(0), rz.W.col(0))) /
                         (arma::norm(rz.H.col(0)) * arma::norm(rz.W.col(0)));
    CHECK(align == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coincident user angles are rejected") {
    SystemConfig cfg;
    cfg.num_antennas = 8;
    cfg.num_users = 2;
    cfg.rician_kappa_db = 300.0;  // effectively pure LoS
    arma::vec l = {50.0, 50.0};   // identical positions, identical steering
    const auto geom = channel::geometry_from_distances(cfg, l);
    Rng rng(5);
    CHECK_THROWS_AS(channel::build_realization(cfg, geom, rng), channel::RankDeficientError);
}

TEST_CASE("identical seeds reproduce the realization bit for bit") {
    SystemConfig cfg;
    cfg.num_antennas = 16;
    cfg.num_users = 4;
    const auto geom = test::default_geometry(cfg);
    Rng a(42), b(42);
    const auto r1 = channel::build_realization(cfg, geom, a);
    const auto r2 = channel::build_realization(cfg, geom, b);
    CHECK(arma::norm(r1.H - r2.H, "fro") == 0.0);
    CHECK(arma::norm(r1.G - r2.G, "fro") == 0.0);
    CHECK(arma::norm(r1.W - r2.W, "fro") == 0.0);
    CHECK(arma::norm(r1.V - r2.V, "fro") == 0.0);
}

TEST_CASE("geometry derivation") {
    SystemConfig cfg;
    const auto geom = test::default_geometry(cfg);
    for (int u = 0; u < cfg.num_users; ++u) {
        CHECK(geom.ue_elev_rad[u] ==
              Approx(std::atan(cfg.ue_height_m / geom.ue_horiz_m[u])).epsilon(1e-12));
        CHECK(geom.eve_elev_rad[u] - geom.ue_elev_rad[u] ==
              Approx(cfg.angle_offset_deg * arma::datum::pi / 180.0).epsilon(1e-12));
        CHECK(geom.ue_horiz_m[u] >= cfg.ue_dist_min_m);
        CHECK(geom.ue_horiz_m[u] <= cfg.ue_dist_max_m);
    }
    CHECK(geom.beta_tilde == Approx(1.0 / arma::sum(1.0 / geom.beta)).epsilon(1e-12));
}
