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

#include "tbesim/simkit.hpp"

#include <omp.h>
#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "tbesim/adversary.hpp"
#include "tbesim/receiver.hpp"

namespace tbesim::simkit {

void TrialCounts::merge(const TrialCounts& other) {
    blocks += other.blocks;
    user_slots += other.user_slots;
    user_msg_errors += other.user_msg_errors;
    user_tag_errors += other.user_tag_errors;
    eve_slots += other.eve_slots;
    eve_msg_errors += other.eve_msg_errors;
    eve_tag_errors += other.eve_tag_errors;
    eve_wiretap_errors += other.eve_wiretap_errors;
    legit_blocks += other.legit_blocks;
    legit_accepted += other.legit_accepted;
    jam_blocks += other.jam_blocks;
    jam_accepted += other.jam_accepted;
    afp_blocks += other.afp_blocks;
    afp_failures += other.afp_failures;
    eve_combine_skipped += other.eve_combine_skipped;
    if (other.legit_stat_hist.size() > legit_stat_hist.size())
        legit_stat_hist.resize(other.legit_stat_hist.size(), 0);
    for (std::size_t i = 0; i < other.legit_stat_hist.size(); ++i)
        legit_stat_hist[i] += other.legit_stat_hist[i];
    if (other.jam_stat_hist.size() > jam_stat_hist.size())
        jam_stat_hist.resize(other.jam_stat_hist.size(), 0);
    for (std::size_t i = 0; i < other.jam_stat_hist.size(); ++i)
        jam_stat_hist[i] += other.jam_stat_hist[i];
}

namespace {

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

// One Monte Carlo block: fresh fading, fresh transmit blocks, fresh AN and
// AWGN, the complete legitimate and eavesdropper chains, plus one jamming
// block through the legitimate receiver for the false-alarm estimate.
TrialCounts run_block(const SystemConfig& cfg, const channel::GeometryScenario& fixed_geom,
                      const tbe::KeyMaterial& key, const PowerAllocation& p, int eta,
                      std::uint64_t master_seed, std::uint64_t block_index,
                      const SimOptions& opts) {
    TrialCounts counts;
    counts.blocks = 1;
    Rng rng(master_seed, block_index);

    const channel::GeometryScenario geom =
        opts.resample_geometry ? channel::draw_geometry(cfg, rng) : fixed_geom;
    const channel::ChannelRealization rz = channel::build_realization(cfg, geom, rng);

    const PowerSplit split = p.split();
    const int T = cfg.block_len;
    const int K = cfg.num_users;
    const int n_an = cfg.num_an_dims();
    const double pt_mw = cfg.tx_power_mw();
    const double noise_mw = opts.zero_noise ? 0.0 : cfg.noise_power_mw();

    // Transmit side.
    std::vector<tbe::MessageBlock> tx(K);
    arma::cx_mat x(T, K);
    for (int u = 0; u < K; ++u) {
        tx[u] = tbe::make_random_block(key, T, split, rng);
        x.col(u) = tx[u].tx;
    }

    // AN symbols are shared by every receiver in the cell.
    arma::cx_mat z;
    if (split.phi_n > 0.0) {
        z.set_size(T, n_an);
        for (int t = 0; t < T; ++t) {
            for (int i = 0; i < n_an; ++i) z(t, i) = rng.cnormal();
        }
    }

    // Projections of signal and AN onto each receive channel.
    const arma::cx_mat hw = rz.H.t() * rz.W;  // H^H W
    const arma::cx_mat gw = rz.G.t() * rz.W;  // G^H W
    arma::cx_mat y_users = x * (split.phi_s * hw.t());
    arma::cx_mat y_eves = x * (split.phi_s * gw.t());
    if (split.phi_n > 0.0) {
        const arma::cx_mat hv = rz.H.t() * rz.V;
        const arma::cx_mat gv = rz.G.t() * rz.V;
        y_users += z * (split.phi_n * hv.t());
        y_eves += z * (split.phi_n * gv.t());
    }
    for (int u = 0; u < K; ++u) y_users.col(u) *= std::sqrt(pt_mw * rz.beta[u]);
    for (int e = 0; e < K; ++e) y_eves.col(e) *= std::sqrt(pt_mw * rz.alpha[e]);
    if (noise_mw > 0.0) {
        for (int u = 0; u < K; ++u) {
            for (int t = 0; t < T; ++t) y_users(t, u) += rng.cnormal(noise_mw);
        }
        for (int e = 0; e < K; ++e) {
            for (int t = 0; t < T; ++t) y_eves(t, e) += rng.cnormal(noise_mw);
        }
    }

    if (opts.collect_histograms) {
        counts.legit_stat_hist.assign(T + 1, 0);
        counts.jam_stat_hist.assign(T + 1, 0);
    }

    // Legitimate receive chains.
    for (int u = 0; u < K; ++u) {
        const arma::cx_vec y_tilde = receiver::normalize_rx(y_users.col(u), split, pt_mw,
                                                            rz.beta_tilde, cfg.num_antennas);
        const receiver::RxBlock rx = receiver::process_block(y_tilde, key, split, eta);
        std::uint64_t msg_err = 0, tag_err = 0;
        for (int t = 0; t < T; ++t) {
            msg_err += rx.c_hat[t] != tx[u].ciphertext[t];
            tag_err += (rx.t_hat[t] > 0.0) != (tx[u].tag[t] > 0.0);
        }
        counts.user_slots += T;
        counts.user_msg_errors += msg_err;
        counts.user_tag_errors += tag_err;
        counts.legit_blocks += 1;
        counts.legit_accepted += rx.decision.authentic;
        counts.afp_blocks += 1;
        counts.afp_failures += !(msg_err == 0 && rx.decision.authentic);
        if (opts.collect_histograms) counts.legit_stat_hist[rx.decision.statistic] += 1;
    }

    // Eavesdropper chain: combine, detect, decode with the wiretapped tag.
    try {
        const arma::cx_mat y_combined = adversary::eve_combine(y_eves, rz, split, pt_mw);
        const adversary::EveBlock eve =
            adversary::eve_detect_and_decode(y_combined, split.rho_m, split.rho_t);
        for (int e = 0; e < K; ++e) {
            for (int t = 0; t < T; ++t) {
                const bool msg_bad = eve.c_hat(t, e) != tx[e].ciphertext[t];
                const bool tag_bad = (eve.t_hat(t, e) > 0.0) != (tx[e].tag[t] > 0.0);
                counts.eve_msg_errors += msg_bad;
                counts.eve_tag_errors += tag_bad;
                counts.eve_wiretap_errors += (msg_bad || tag_bad);
            }
            counts.eve_slots += T;
        }
    } catch (const adversary::CombineError&) {
        counts.eve_combine_skipped += 1;
    }

    // Jamming block: random symbols and tags through the legitimate chain.
    {
        const double sigma_u = std::sqrt(noise_mw) /
                               (split.phi_s * std::sqrt(2.0 * cfg.num_antennas * pt_mw *
                                                        rz.beta_tilde));
        arma::cx_vec y_jam = adversary::make_jamming_signal(T, split, rng);
        if (noise_mw > 0.0) {
            for (int t = 0; t < T; ++t) y_jam[t] += rng.cnormal(2.0 * sigma_u * sigma_u);
        }
        const receiver::RxBlock rx = receiver::process_block(y_jam, key, split, eta);
        counts.jam_blocks += 1;
        counts.jam_accepted += rx.decision.authentic;
        if (opts.collect_histograms) counts.jam_stat_hist[rx.decision.statistic] += 1;
    }

    return counts;
}

MetricEstimate proportion(std::uint64_t hits, std::uint64_t n, std::uint64_t n_blocks) {
    MetricEstimate m;
    if (n == 0 || n_blocks == 0) return m;
    m.estimate = static_cast<double>(hits) / static_cast<double>(n);
    m.std_err = std::sqrt(m.estimate * (1.0 - m.estimate) / static_cast<double>(n_blocks));
    return m;
}

TrialReport summarize(const SystemConfig& cfg, const channel::GeometryScenario& geom,
                      TrialCounts&& counts, std::uint64_t n_blocks, std::uint64_t seed, int eta) {
    TrialReport rep;
    rep.n_blocks = n_blocks;
    rep.seed = seed;
    rep.eta = eta;
    rep.scenario_digest = scenario_digest(cfg, geom);
    rep.user_msg_ser = proportion(counts.user_msg_errors, counts.user_slots, n_blocks);
    rep.user_tag_ser = proportion(counts.user_tag_errors, counts.user_slots, n_blocks);
    rep.eve_msg_ser = proportion(counts.eve_msg_errors, counts.eve_slots, n_blocks);
    rep.eve_tag_ser = proportion(counts.eve_tag_errors, counts.eve_slots, n_blocks);
    rep.p_w = proportion(counts.eve_wiretap_errors, counts.eve_slots, n_blocks);
    rep.p_d = proportion(counts.legit_accepted, counts.legit_blocks, n_blocks);
    rep.p_f = proportion(counts.jam_accepted, counts.jam_blocks, n_blocks);
    rep.afp = proportion(counts.afp_failures, counts.afp_blocks, n_blocks);
    // Leakage ratio via the info-ratio map of the measured eavesdropper tag
    // SER; the error bar follows from the delta method.
    const double pte = rep.eve_tag_ser.estimate;
    rep.leakage_ratio.estimate = theory::info_ratio(pte);
    rep.leakage_ratio.std_err =
        (pte < 1.0) ? rep.eve_tag_ser.std_err / ((1.0 - pte) * std::log(2.0)) : 0.0;
    rep.counts = std::move(counts);
    return rep;
}

}  // namespace

std::string scenario_digest(const SystemConfig& cfg, const channel::GeometryScenario& geom) {
    char buf[128];
    std::string blob;
    auto add = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g;", v);
        blob += buf;
    };
    add(cfg.num_antennas);
    add(cfg.num_users);
    add(cfg.block_len);
    add(cfg.tx_power_dbm);
    add(cfg.carrier_ghz);
    add(cfg.bandwidth_mhz);
    add(cfg.thermal_noise_dbm_hz);
    add(cfg.noise_figure_db);
    add(cfg.ue_height_m);
    add(cfg.eve_height_m);
    add(cfg.rician_kappa_db);
    add(cfg.angle_offset_deg);
    add(cfg.key_bits);
    add(cfg.pf_target);
    add(cfg.antenna_spacing_wavelengths);
    add(static_cast<double>(cfg.path_loss));
    add(static_cast<double>(cfg.an_norm));
    for (const double l : geom.ue_horiz_m) add(l);
    return sha256_hex(blob);
}

TrialReport run_montecarlo_serial(const SystemConfig& cfg, const channel::GeometryScenario& geom,
                                  const tbe::KeyMaterial& key, const PowerAllocation& p,
                                  std::uint64_t n_blocks, std::uint64_t master_seed,
                                  const SimOptions& opts) {
    if (n_blocks < 1) throw std::invalid_argument("need at least one block");
    const int eta = theory::evaluate_scenario(cfg, geom, p).eta;
    TrialCounts total;
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
        total.merge(run_block(cfg, geom, key, p, eta, master_seed, b, opts));
    }
    return summarize(cfg, geom, std::move(total), n_blocks, master_seed, eta);
}

TrialReport run_montecarlo(const SystemConfig& cfg, const channel::GeometryScenario& geom,
                           const tbe::KeyMaterial& key, const PowerAllocation& p,
                           std::uint64_t n_blocks, std::uint64_t master_seed,
                           const SimOptions& opts) {
    if (n_blocks < 1) throw std::invalid_argument("need at least one block");
    const int eta = theory::evaluate_scenario(cfg, geom, p).eta;
    TrialCounts total;
    const int requested = opts.n_threads;
#pragma omp parallel num_threads(requested > 0 ? requested : omp_get_max_threads())
    {
        TrialCounts local;
#pragma omp for schedule(static) nowait
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(n_blocks); ++b) {
            local.merge(run_block(cfg, geom, key, p, eta, master_seed,
                                  static_cast<std::uint64_t>(b), opts));
        }
#pragma omp critical
        total.merge(local);
    }
    return summarize(cfg, geom, std::move(total), n_blocks, master_seed, eta);
}

std::vector<RocPoint> roc_sweep(const SystemConfig& cfg, const channel::GeometryScenario& geom,
                                const tbe::KeyMaterial& key, const PowerAllocation& p,
                                std::uint64_t n_blocks, std::uint64_t master_seed,
                                const SimOptions& opts) {
    SimOptions o = opts;
    o.collect_histograms = true;
    const TrialReport rep = run_montecarlo(cfg, geom, key, p, n_blocks, master_seed, o);
    const int T = cfg.block_len;
    std::vector<RocPoint> roc(T + 1);
    std::uint64_t legit_cum = 0, jam_cum = 0;
    const double n_legit = static_cast<double>(rep.counts.legit_blocks);
    const double n_jam = static_cast<double>(rep.counts.jam_blocks);
    const double nb = static_cast<double>(n_blocks);
    for (int eta = 0; eta <= T; ++eta) {
        legit_cum += rep.counts.legit_stat_hist[eta];
        jam_cum += rep.counts.jam_stat_hist[eta];
        RocPoint& pt = roc[eta];
        pt.eta = eta;
        pt.p_d = legit_cum / n_legit;
        pt.p_f = jam_cum / n_jam;
        pt.p_d_stderr = std::sqrt(pt.p_d * (1.0 - pt.p_d) / nb);
        pt.p_f_stderr = std::sqrt(pt.p_f * (1.0 - pt.p_f) / nb);
    }
    return roc;
}

ComparisonTable compare_theory_sim(const TrialReport& report, const theory::SecurityMetrics& thr,
                                   const std::string& theory_digest) {
    if (report.scenario_digest != theory_digest)
        throw std::invalid_argument("scenario digests differ between simulation and theory");
    ComparisonTable table;
    auto row = [&](const std::string& name, const MetricEstimate& sim, double theory_value) {
        ComparisonRow r;
        r.metric = name;
        r.sim = sim.estimate;
        r.theory = theory_value;
        r.std_err = sim.std_err;
        r.z = sim.std_err > 0.0 ? (sim.estimate - theory_value) / sim.std_err
                                : (sim.estimate == theory_value ? 0.0
                                                                : std::numeric_limits<double>::infinity());
        r.pass = std::abs(r.z) <= 3.0;
        table.rows.push_back(r);
        table.n_total += 1;
        table.n_pass += r.pass;
    };
    row("user_msg_ser", report.user_msg_ser, thr.user.ser_m);
    row("user_tag_ser", report.user_tag_ser, thr.user.ser_t);
    row("eve_msg_ser", report.eve_msg_ser, thr.avg_eve_ser_m);
    row("eve_tag_ser", report.eve_tag_ser, thr.avg_eve_ser_t);
    row("p_d", report.p_d, thr.p_d);
    row("p_f", report.p_f, thr.p_f);
    row("leakage_ratio", report.leakage_ratio, thr.i_e_avg);
    row("afp", report.afp, thr.rel.afp);
    row("p_w", report.p_w, thr.rel.p_w);
    return table;
}

}  // namespace tbesim::simkit
