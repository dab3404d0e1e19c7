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
#include "tbesim/theory.hpp"

using namespace tbesim;
using Catch::Approx;

TEST_CASE("q function") {
    CHECK(theory::q_function(0.0) == Approx(0.5));
    for (const double x : {0.5, 1.0, 2.0}) {
        CHECK(theory::q_function(x) + theory::q_function(-x) == Approx(1.0).epsilon(1e-14));
    }
    // numeric-integration oracle value
    CHECK(theory::q_function(1.2816) == Approx(0.099991500097675166).margin(1e-12));
}

TEST_CASE("message SER collapses to the QPSK form without a tag") {
    for (const double sigma : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        const double q = theory::q_function(1.0 / (std::sqrt(2.0) * sigma));
        const double qpsk = 1.0 - (1.0 - q) * (1.0 - q);
        CHECK(theory::message_ser(1.0, 0.0, sigma) == Approx(qpsk).epsilon(1e-14));
    }
}

TEST_CASE("user metrics") {
    SystemConfig cfg;
    const auto geom = test::default_geometry(cfg);
    SECTION("all-message split leaves the tag at chance") {
        const auto m = theory::ue_metrics(cfg.num_antennas, cfg.tx_power_mw(),
                                          cfg.noise_power_mw(), geom.beta_tilde, {1.0, 1.0});
        CHECK(m.sinr_t == 0.0);
        CHECK(m.ser_t == Approx(0.5).epsilon(1e-12));
    }
    SECTION("closed forms match their definitions") {
        const PowerAllocation p{0.95, 0.8};
        const auto m = theory::ue_metrics(cfg.num_antennas, cfg.tx_power_mw(),
                                          cfg.noise_power_mw(), geom.beta_tilde, p);
        const double noise_over = cfg.noise_power_mw() / (cfg.tx_power_mw() * geom.beta_tilde);
        CHECK(m.sinr_m == Approx(0.8 * 0.95 * 64 / (0.8 * 0.05 * 64 + noise_over)));
        CHECK(m.sinr_t == Approx(2.0 * 0.8 * 0.05 * 64 / noise_over));
        CHECK(m.sigma_u ==
              Approx(std::sqrt(cfg.noise_power_mw()) /
                     (std::sqrt(0.8) * std::sqrt(2.0 * 64 * cfg.tx_power_mw() * geom.beta_tilde))));
    }
    SECTION("message SER grows as rho shrinks") {
        double prev = 0.0;
        for (int i = 0; i <= 40; ++i) {
            const double rho = 1.0 - 0.1 * i / 40.0;
            const auto m = theory::ue_metrics(cfg.num_antennas, cfg.tx_power_mw(),
                                              cfg.noise_power_mw(), geom.beta_tilde, {rho, 1.0});
            CHECK(m.ser_m >= prev - 1e-15);
            prev = m.ser_m;
        }
    }
    SECTION("tag SER has a single interior minimum in rho") {
        // wider box than the optimizer's, so the upturn is visible
        int sign_changes = 0;
        double prev = theory::tag_ser(std::sqrt(0.5), std::sqrt(0.5), 0.15);
        int last_sign = 0;
        for (int i = 1; i <= 400; ++i) {
            const double rho = 0.5 + 0.5 * i / 400.0;
            const double v = theory::tag_ser(std::sqrt(rho), std::sqrt(1.0 - rho), 0.15);
            const double d = v - prev;
            prev = v;
            if (std::abs(d) < 1e-15) continue;
            const int s = d > 0 ? 1 : -1;
            if (last_sign != 0 && s != last_sign) ++sign_changes;
            last_sign = s;
        }
        CHECK(sign_changes == 1);
    }
}

TEST_CASE("LoS correlation factors") {
    const int M = 64;
    SECTION("matched steering at high kappa behaves like a co-located user") {
        const double f = theory::f_kappa(1e12, M, M);
        CHECK(f == Approx(static_cast<double>(M)).epsilon(1e-6));
        CHECK(theory::g_kappa(1e12, M, M) == Approx(0.0).margin(1e-9));
        // SINR equality when the eavesdropper shares the channel gain
        SystemConfig cfg;
        const auto geom = test::default_geometry(cfg);
        const PowerAllocation p{0.95, 0.7};
        const auto user = theory::ue_metrics(M, cfg.tx_power_mw(), cfg.noise_power_mw(),
                                             geom.beta_tilde, p);
        const auto eve = theory::eve_metrics(M, cfg.tx_power_mw(), cfg.noise_power_mw(), 1e12,
                                             geom.beta[0], geom.beta[0], M, geom.beta_tilde, p);
        // identical up to the AN term, which vanishes as kappa grows
        CHECK(eve.sinr_m == Approx(user.sinr_m).epsilon(1e-6));
    }
    SECTION("orthogonal steering erases the coherent gain") {
        CHECK(theory::f_kappa(1e12, 0.0, M) == Approx(0.0).margin(1e-9));
        const auto m = theory::eve_metrics(M, 3.16, 1e-8, 1e12, 5e-9, 5e-9, 0.0, 1.2e-9,
                                           {0.95, 1.0});
        CHECK(m.ser_m == Approx(0.75));
        CHECK(m.ser_t == Approx(0.5));
    }
    SECTION("printed forms") {
        const double kappa = 1000.0, gamma = 48.0;
        const double kp1 = kappa + 1.0;
        CHECK(theory::f_kappa(kappa, gamma, M) ==
              Approx(kappa * kappa * gamma * gamma / (M * kp1 * kp1) + 2 * kappa / (kp1 * kp1) +
                     1.0 / (kp1 * kp1)));
        CHECK(theory::g_kappa(kappa, gamma, M) ==
              Approx((kappa / kp1 * (2.0 * M - 2.0 * gamma) + 2.0 / kp1) / M));
    }
}

TEST_CASE("binomial machinery") {
    SECTION("exact CDF at the frozen oracle point") {
        CHECK(theory::binomial_cdf(4, 160, 0.01) ==
              Approx(0.97698024933184875).epsilon(1e-12));
    }
    SECTION("edge cases") {
        CHECK(theory::binomial_cdf(160, 160, 0.3) == 1.0);
        CHECK(theory::binomial_cdf(-1, 160, 0.3) == 0.0);
        CHECK(theory::binomial_cdf(0, 160, 0.0) == 1.0);
    }
    SECTION("P_d is monotone in p_t and eta") {
        double prev = 1.0;
        for (const double pt : {0.01, 0.05, 0.2, 0.4, 0.5}) {
            const double pd = theory::binomial_cdf(60, 160, pt);
            CHECK(pd <= prev + 1e-15);
            prev = pd;
        }
        prev = 0.0;
        for (const int eta : {0, 20, 40, 60, 160}) {
            const double pd = theory::binomial_cdf(eta, 160, 0.3);
            CHECK(pd >= prev - 1e-15);
            prev = pd;
        }
    }
}

TEST_CASE("authentication probabilities") {
    SECTION("degenerate inputs") {
        CHECK(theory::auth_probabilities(0.0, 0.0, 160, 3).p_d == 1.0);
        CHECK(theory::auth_probabilities(0.37, 0.0, 160, 160).p_d == 1.0);
    }
    SECTION("threshold selection") {
        // (C(8,0)+C(8,1))/2^8 = 0.03516 <= 0.04 < (1+8+28)/256
        CHECK(theory::select_threshold(8, 0.04, 0.0, 0.3) == 1);
        CHECK(theory::select_threshold(8, 1.0, 0.0, 0.3) == 8);
        CHECK_THROWS_AS(theory::select_threshold(8, 0.001, 0.0, 0.3), std::domain_error);
        CHECK(theory::select_threshold(160, 1e-3, 0.0, 0.3) == 60);
    }
    SECTION("sign-flip correction stays tiny at benign operating points") {
        SystemConfig cfg;
        const auto geom = test::default_geometry(cfg);
        const auto m = theory::evaluate_scenario(cfg, geom, {0.997, 1.0});
        CHECK(m.p_b < 1e-6);
        // prior-variant P_f (P_b = 0) differs negligibly
        for (int eta = 0; eta <= 160; eta += 20) {
            const auto a = theory::auth_probabilities(m.user.ser_t, m.user.ser_m, 160, eta);
            const double prior = theory::binomial_cdf(eta, 160, 0.5);
            CHECK(std::abs(a.p_f - prior) < 1e-3);
        }
    }
}

TEST_CASE("information ratio") {
    CHECK(theory::info_ratio(0.25) == Approx(0.58496250072115618).epsilon(1e-14));
    CHECK(theory::info_ratio(0.5) == Approx(0.0).margin(1e-15));
    CHECK(theory::info_ratio(0.75) == 0.0);  // clipped
    CHECK(theory::info_ratio(1.0) == 0.0);   // degenerate, clipped from -inf
    CHECK(theory::info_ratio(0.0) == 1.0);
}

TEST_CASE("rates and reliability") {
    theory::UserMetrics user;
    user.sinr_m = 10.0;
    std::vector<theory::EveMetrics> eves(2);
    eves[0].sinr_m = 10.0;
    eves[1].sinr_m = 10.0;

    SECTION("symmetric links clip to zero secrecy") {
        const auto r = theory::secrecy_rates(user, eves, 0.7, {0.7, 0.7});
        CHECK(r.r_sec == 0.0);
        CHECK(r.r_classic == 0.0);
        CHECK(r.r_u == Approx(2 * 0.7 * std::log2(11.0)));
    }
    SECTION("reliability identities") {
        eves[0].ser_m = 0.5;
        eves[0].ser_t = 0.5;
        eves[1].ser_m = 0.5;
        eves[1].ser_t = 0.5;
        const auto rel = theory::reliability_metrics(0.0, 1.0, eves, 160);
        CHECK(rel.bler == 0.0);
        CHECK(rel.afp == 0.0);
        CHECK(rel.p_w == Approx(0.75));
        const auto rel2 = theory::reliability_metrics(0.0, 0.9, eves, 160);
        CHECK(rel2.afp == Approx(0.1));
        const auto prior =
            theory::reliability_metrics(0.0, 1.0, eves, 160, theory::WiretapModel::kPriorTagEmbedding);
        CHECK(prior.p_w == Approx(0.5));  // message errors only
    }
}

TEST_CASE("scenario bundle consistency") {
    SystemConfig cfg;
    const auto geom = test::default_geometry(cfg);
    const PowerAllocation p{0.95, 1.0};
    const auto m = theory::evaluate_scenario(cfg, geom, p);
    CHECK(m.rates.r_sec >= 0.0);
    CHECK(m.rel.p_w >= 0.0);
    CHECK(m.rel.p_w <= 1.0);
    CHECK(m.eta == 60);
    CHECK(m.p_d > 0.99);
    SECTION("R_sec equals R_U when every eavesdropper is uninformed") {
        SystemConfig far = cfg;
        far.angle_offset_deg = 40.0;  // deep sidelobes, I_e ~ 0
        const auto geom2 = test::default_geometry(far);
        const auto m2 = theory::evaluate_scenario(far, geom2, {0.997, 1.0});
        if (m2.i_e_avg == 0.0) {
            CHECK(m2.rates.r_sec == Approx(m2.rates.r_u).epsilon(1e-12));
        }
    }
    SECTION("fixed-eta variant pins the threshold") {
        const auto m3 = theory::evaluate_scenario_fixed_eta(cfg, geom, p, 42);
        CHECK(m3.eta == 42);
        CHECK(m3.p_d == Approx(theory::binomial_cdf(42, 160, m3.user.ser_t)));
    }
}

TEST_CASE("AN crossover at the low-risk geometry") {
    SystemConfig cfg;
    cfg.eve_height_m = 80.0;
    cfg.angle_offset_deg = 1.0;
    const auto geom = test::default_geometry(cfg);
    const auto at_full = theory::evaluate_scenario(cfg, geom, {0.95, 1.0});
    CHECK(at_full.avg_eve_ser_m < at_full.user.ser_m);
    bool crossed = false;
    for (int i = 1; i <= 100; ++i) {
        const auto m = theory::evaluate_scenario(cfg, geom, {0.95, i / 100.0});
        if (m.avg_eve_ser_m > m.user.ser_m) crossed = true;
    }
    CHECK(crossed);
}
