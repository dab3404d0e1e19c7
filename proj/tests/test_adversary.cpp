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
#include <type_traits>

#include "helpers.hpp"
#include "tbesim/adversary.hpp"
#include "tbesim/theory.hpp"

using namespace tbesim;
using Catch::Approx;

namespace {

arma::cx_mat tx_matrix(const tbe::KeyMaterial& key, const SystemConfig& cfg,
                       const PowerSplit& split, Rng& rng, std::vector<tbe::MessageBlock>* out) {
    arma::cx_mat x(cfg.block_len, cfg.num_users);
    for (int u = 0; u < cfg.num_users; ++u) {
        auto blk = tbe::make_random_block(key, cfg.block_len, split, rng);
        x.col(u) = blk.tx;
        if (out) out->push_back(std::move(blk));
    }
    return x;
}

}  // namespace

// Eavesdroppers never hold key material: the wiretap chain runs on received
// signals alone, and its entry points cannot accept a key.
static_assert(std::is_invocable_v<decltype(adversary::eve_detect_and_decode),
                                  const arma::cx_mat&, double, double>);
static_assert(!std::is_invocable_v<decltype(adversary::eve_detect_and_decode),
                                   const arma::cx_mat&, const tbe::KeyMaterial&, double, double>);

TEST_CASE("wiretap reception matches the legitimate one on identical channels") {
    SystemConfig cfg;
    cfg.num_antennas = 16;
    cfg.num_users = 2;
    cfg.block_len = 32;
    const auto geom = test::default_geometry(cfg);
    Rng rng(21);
    auto rz = channel::build_realization(cfg, geom, rng);
    rz.G = rz.H;
    rz.alpha = rz.beta;

    const auto split = PowerAllocation{0.95, 1.0}.split();  // phi_n = 0
    const auto key = tbe::KeyMaterial::random(64, rng);
    std::vector<tbe::MessageBlock> blocks;
    const arma::cx_mat x = tx_matrix(key, cfg, split, rng, &blocks);

    const arma::cx_mat y_eve =
        adversary::eve_receive(rz, x, split, cfg.tx_power_mw(), 0.0, rng);
    // Column u must equal user u's noiseless reception.
    for (int u = 0; u < cfg.num_users; ++u) {
        arma::cx_vec y_user(cfg.block_len, arma::fill::zeros);
        for (int k = 0; k < cfg.num_users; ++k) {
            y_user += split.phi_s * arma::cdot(rz.H.col(u), rz.W.col(k)) * x.col(k);
        }
        y_user *= std::sqrt(cfg.tx_power_mw() * rz.beta[u]);
        CHECK(arma::norm(y_eve.col(u) - y_user) < 1e-9 * arma::norm(y_user));
    }
}

TEST_CASE("AN-only reception power") {
    // Single user/eavesdropper pair: the closed-form g(kappa) models one
    // LoS-correlated link and does not account for the null-space directions
    // removed by other users, so K = 1 is its native setting.
    SystemConfig cfg;
    cfg.num_users = 1;
    cfg.angle_offset_deg = 1.0;
    cfg.block_len = 160;
    const auto geom = channel::geometry_from_distances(cfg, arma::vec{80.0});
    PowerSplit an_only;
    an_only.rho_m = 1.0;
    an_only.rho_t = 0.0;
    an_only.phi_s = 0.0;
    an_only.phi_n = 1.0;
    Rng rng(22);
    const auto key = tbe::KeyMaterial::random(64, rng);

    const int n_blocks = 625;  // 1e5 slots
    double measured = 0.0;
    double exact = 0.0;  // per-realization projection oracle
    for (int b = 0; b < n_blocks; ++b) {
        const auto rz = channel::build_realization(cfg, geom, rng);
        const arma::cx_mat x = tx_matrix(key, cfg, an_only, rng, nullptr);
        const arma::cx_mat y = adversary::eve_receive(rz, x, an_only, cfg.tx_power_mw(), 0.0, rng);
        const arma::cx_mat gv = rz.G.t() * rz.V;
        measured += std::pow(arma::norm(y.col(0)), 2) / cfg.block_len;
        exact += cfg.tx_power_mw() * rz.alpha[0] * std::pow(arma::norm(gv.row(0)), 2);
    }
    measured /= n_blocks;
    exact /= n_blocks;
    // Per-slot |y|^2 is exponential around the per-realization variance plus
    // a cross-block spread; both shrink with the slot count.
    const double rel_err = 1.0 / std::sqrt(static_cast<double>(n_blocks) * cfg.block_len);
    CHECK(std::abs(measured - exact) < 5.0 * exact * rel_err);
    // The printed g(kappa) carries its structural LoS approximation; in the
    // single-pair setting it stays within (M + Gamma)/(2(M-1))-style factors
    // of the measured power. Record the ratio and pin the honest band.
    const double model = cfg.tx_power_mw() * geom.alpha[0] *
                         theory::g_kappa(cfg.kappa_linear(), geom.gamma[0], cfg.num_antennas);
    INFO("measured/model AN power ratio: " << measured / model);
    const double gamma = geom.gamma[0];
    const double predicted_ratio =
        (cfg.num_antennas + gamma) / (2.0 * (cfg.num_antennas - 1));
    CHECK(measured / model == Approx(predicted_ratio).epsilon(0.05));
    CHECK(measured / model > 0.5);
    CHECK(measured / model < 1.5);
}

TEST_CASE("right-inverse combining") {
    SystemConfig cfg;
    cfg.num_antennas = 16;
    cfg.num_users = 3;
    cfg.block_len = 64;
    const auto geom = test::default_geometry(cfg);
    Rng rng(23);
    const auto rz = channel::build_realization(cfg, geom, rng);
    const auto key = tbe::KeyMaterial::random(64, rng);

    SECTION("zero noise and no AN recovers X exactly") {
        for (const double phi : {1.0, 0.49}) {
            PowerSplit split = PowerAllocation{0.95, 1.0}.split();
            split.phi_s = std::sqrt(phi);
            split.phi_n = 0.0;  // AN off regardless of the nominal split
            std::vector<tbe::MessageBlock> blocks;
            const arma::cx_mat x = tx_matrix(key, cfg, split, rng, &blocks);
            const arma::cx_mat y =
                adversary::eve_receive(rz, x, split, cfg.tx_power_mw(), 0.0, rng);
            const arma::cx_mat x_rec = adversary::eve_combine(y, rz, split, cfg.tx_power_mw());
            CHECK(arma::norm(x_rec - x, "fro") < 1e-8 * arma::norm(x, "fro"));
        }
    }
    SECTION("zero-noise wiretap leaks the whole plaintext") {
        const auto split = PowerAllocation{0.95, 1.0}.split();
        std::vector<tbe::MessageBlock> blocks;
        const arma::cx_mat x = tx_matrix(key, cfg, split, rng, &blocks);
        const arma::cx_mat y = adversary::eve_receive(rz, x, split, cfg.tx_power_mw(), 0.0, rng);
        const arma::cx_mat x_rec = adversary::eve_combine(y, rz, split, cfg.tx_power_mw());
        const auto eve = adversary::eve_detect_and_decode(x_rec, split.rho_m, split.rho_t);
        for (int e = 0; e < cfg.num_users; ++e) {
            for (int t = 0; t < cfg.block_len; ++t) {
                CHECK(eve.s_hat(t, e) == blocks[e].symbols[t]);
            }
        }
    }
    SECTION("singular combiner is reported") {
        auto broken = rz;
        broken.G.zeros();
        PowerSplit split = PowerAllocation{0.95, 1.0}.split();
        arma::cx_mat y(cfg.block_len, cfg.num_users, arma::fill::ones);
        CHECK_THROWS_AS(adversary::eve_combine(y, broken, split, cfg.tx_power_mw()),
                        adversary::CombineError);
    }
}

TEST_CASE("decoding with a powerless tag is a coin flip") {
    SystemConfig cfg;
    cfg.num_antennas = 16;
    cfg.num_users = 2;
    cfg.block_len = 160;
    const auto geom = test::default_geometry(cfg);
    Rng rng(24);
    const auto rz = channel::build_realization(cfg, geom, rng);
    const auto key = tbe::KeyMaterial::random(64, rng);
    const auto split = PowerAllocation{1.0, 1.0}.split();  // rho_t = 0
    std::vector<tbe::MessageBlock> blocks;
    const arma::cx_mat x = tx_matrix(key, cfg, split, rng, &blocks);
    const arma::cx_mat y = adversary::eve_receive(rz, x, split, cfg.tx_power_mw(), 0.0, rng);
    const arma::cx_mat x_rec = adversary::eve_combine(y, rz, split, cfg.tx_power_mw());
    const auto eve = adversary::eve_detect_and_decode(x_rec, split.rho_m, split.rho_t);
    // Perfect ciphertext, but the tag guess carries nothing: plaintext
    // correctness cannot beat the share of +1 tags.
    int correct = 0, plus_tags = 0, c_correct = 0;
    for (int e = 0; e < cfg.num_users; ++e) {
        for (int t = 0; t < cfg.block_len; ++t) {
            c_correct += eve.c_hat(t, e) == blocks[e].ciphertext[t];
            correct += eve.s_hat(t, e) == blocks[e].symbols[t];
            plus_tags += blocks[e].tag[t] > 0;
        }
    }
    CHECK(c_correct == 2 * cfg.block_len);
    CHECK(correct == plus_tags);  // t_hat is pinned to +1 at rho_t = 0
    CHECK(std::abs(correct / 320.0 - 0.5) < 0.2);
}

TEST_CASE("jamming blocks") {
    Rng rng(25);
    const auto split = PowerAllocation{0.95, 1.0}.split();
    const arma::cx_vec jam = adversary::make_jamming_signal(4000, split, rng);
    double power = std::pow(arma::norm(jam), 2) / 4000.0;
    CHECK(std::abs(power - 1.0) < 0.05);
    // Signals live on the lattice rho_m * (+-c) + rho_t * (+-1).
    const auto& cons = tbe::message_constellation();
    for (int t = 0; t < 10; ++t) {
        bool on_lattice = false;
        for (const auto& c : cons) {
            for (const double tag : {-1.0, 1.0}) {
                if (std::abs(jam[t] - (split.rho_m * tag * c + split.rho_t * tag)) < 1e-12)
                    on_lattice = true;
            }
        }
        CHECK(on_lattice);
    }
}

TEST_CASE("max AN drives the eavesdropper tag to a coin flip") {
    SystemConfig cfg;
    cfg.eve_height_m = 60.0;
    cfg.angle_offset_deg = 1.0;
    const auto geom = test::default_geometry(cfg);
    double prev = 0.0;
    for (int i = 20; i >= 1; --i) {  // phi from 1.0 downward: more AN
        const PowerAllocation p{0.95, i / 20.0};
        const auto m = theory::evaluate_scenario(cfg, geom, p);
        CHECK(m.avg_eve_ser_t >= prev - 1e-12);
        prev = m.avg_eve_ser_t;
    }
    const auto worst = theory::evaluate_scenario(cfg, geom, PowerAllocation{0.95, 1e-4});
    CHECK(worst.avg_eve_ser_t > 0.45);
}
