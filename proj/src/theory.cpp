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

#include "tbesim/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tbesim::theory {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// lgamma(n) with a growing per-thread table; the binomial sums hit the same
// small arguments millions of times inside grid scans and solvers.
inline double lgamma_cached(int n) {
    thread_local std::vector<double> table{0.0, 0.0};  // lgamma(1), lgamma(2)
    if (n < 1) return std::lgamma(static_cast<double>(n));
    while (static_cast<int>(table.size()) < n) {
        table.push_back(std::lgamma(static_cast<double>(table.size() + 1)));
    }
    return table[n - 1];
}

// log C(n,k)
inline double log_binomial(int n, int k) {
    return lgamma_cached(n + 1) - lgamma_cached(k + 1) - lgamma_cached(n - k + 1);
}

// Compensated (Kahan) accumulation of exp(log_terms - log_max).
class ScaledSum {
  public:
    void add(double v) {
        const double y = v - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double message_ser(double rho_m, double rho_t, double sigma) {
    if (sigma <= 0.0) throw std::domain_error("degenerate noise in message SER");
    const double a = rho_m / kSqrt2;
    return 1.0 - 0.5 *
                     (q_function(-(a + rho_t) / sigma) + q_function(-(a - rho_t) / sigma)) *
                     q_function(-a / sigma);
}

double tag_ser(double rho_m, double rho_t, double sigma) {
    if (sigma <= 0.0) throw std::domain_error("degenerate noise in tag SER");
    const double a = rho_m / kSqrt2;
    const double b = kSqrt2 * rho_m;
    return 0.5 * (2.0 * q_function(rho_t / sigma) - q_function((a + rho_t) / sigma) +
                  q_function((b + rho_t) / sigma) + q_function((a - rho_t) / sigma) -
                  q_function((b - rho_t) / sigma));
}

double tag_ser_simplified(double rho_t, double sigma) { return q_function(rho_t / sigma); }

UserMetrics ue_metrics(int num_antennas, double tx_power_mw, double noise_power_mw,
                       double beta_tilde, const PowerAllocation& p) {
    const double M = num_antennas;
    const double rho = p.rho, phi = p.phi;
    const double noise_over_gain = noise_power_mw / (tx_power_mw * beta_tilde);
    UserMetrics m;
    m.sinr_m = phi * rho * M / (phi * (1.0 - rho) * M + noise_over_gain);
    m.sinr_t = 2.0 * phi * (1.0 - rho) * M / noise_over_gain;
    m.sigma_u = std::sqrt(noise_power_mw) /
                (std::sqrt(phi) * std::sqrt(2.0 * M * tx_power_mw * beta_tilde));
    if (!(m.sigma_u > 0.0)) throw std::domain_error("degenerate equivalent noise");
    const auto s = p.split();
    m.ser_m = message_ser(s.rho_m, s.rho_t, m.sigma_u);
    m.ser_t = tag_ser(s.rho_m, s.rho_t, m.sigma_u);
    return m;
}

double f_kappa(double kappa, double gamma, int num_antennas) {
    const double M = num_antennas;
    const double kp1 = kappa + 1.0;
    return kappa * kappa * gamma * gamma / (M * kp1 * kp1) + 2.0 * kappa / (kp1 * kp1) +
           1.0 / (kp1 * kp1);
}

double g_kappa(double kappa, double gamma, int num_antennas) {
    const double M = num_antennas;
    const double kp1 = kappa + 1.0;
    return (kappa / kp1 * (2.0 * M - 2.0 * gamma) + 2.0 / kp1) / M;
}

EveMetrics eve_metrics(int num_antennas, double tx_power_mw, double noise_power_mw,
                       double kappa, double beta_u, double alpha_e, double gamma_e,
                       double beta_tilde, const PowerAllocation& p) {
    EveMetrics m;
    m.gamma = gamma_e;
    m.f_kappa = f_kappa(kappa, gamma_e, num_antennas);
    m.g_kappa = g_kappa(kappa, gamma_e, num_antennas);
    const double rho = p.rho, phi = p.phi;
    const double gain = (beta_tilde / beta_u) * m.f_kappa;  // beta_u^-1 beta~ f(kappa)
    const double noise_over_gain = noise_power_mw / (tx_power_mw * alpha_e);
    const double an_term = (1.0 - phi) * m.g_kappa;

    if (m.f_kappa <= 0.0 || gain <= 0.0) {
        // Degenerate wiretap: no coherent gain at all, detection is chance.
        m.sinr_m = 0.0;
        m.sinr_t = 0.0;
        m.sigma_e = std::numeric_limits<double>::infinity();
        m.ser_m = 0.75;
        m.ser_t = 0.5;
        return m;
    }

    m.sinr_m = phi * rho * gain / (phi * (1.0 - rho) * gain + an_term + noise_over_gain);
    m.sinr_t = phi * (1.0 - rho) * gain / (an_term + noise_over_gain);
    m.sigma_e = std::sqrt((noise_over_gain + an_term) / (2.0 * phi * gain));
    const auto s = p.split();
    m.ser_m = message_ser(s.rho_m, s.rho_t, m.sigma_e);
    m.ser_t = tag_ser(s.rho_m, s.rho_t, m.sigma_e);
    return m;
}

double binomial_cdf(int k, int n, double p) {
    if (k < 0) return 0.0;
    if (k >= n) return 1.0;
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return 0.0;
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    // Find the largest summed term for scaling.
    double log_max = -std::numeric_limits<double>::infinity();
    for (int z = 0; z <= k; ++z) {
        log_max = std::max(log_max, log_binomial(n, z) + z * log_p + (n - z) * log_q);
    }
    ScaledSum sum;
    for (int z = 0; z <= k; ++z) {
        sum.add(std::exp(log_binomial(n, z) + z * log_p + (n - z) * log_q - log_max));
    }
    return std::min(1.0, std::exp(log_max) * sum.value());
}

double sign_flip_block_prob(double ser_m, int block_len) {
    if (ser_m <= 0.0) return 0.0;
    if (ser_m >= 1.0) return 1.0;
    const double log_correct = std::log1p(-ser_m);
    const double flip = 1.0 - std::sqrt(1.0 - ser_m);  // per-quadrature error amplitude
    if (flip <= 0.0) return 0.0;
    const double log_flip2 = 2.0 * std::log(flip);
    double log_max = -std::numeric_limits<double>::infinity();
    for (int z = 1; z <= block_len; ++z) {
        log_max = std::max(log_max, log_binomial(block_len, z) + (block_len - z) * log_correct +
                                        z * log_flip2);
    }
    ScaledSum sum;
    for (int z = 1; z <= block_len; ++z) {
        sum.add(std::exp(log_binomial(block_len, z) + (block_len - z) * log_correct +
                         z * log_flip2 - log_max));
    }
    return std::exp(log_max) * sum.value();
}

AuthProbs auth_probabilities(double p_t, double p_m, int block_len, int eta) {
    if (p_t < 0.0 || p_t > 1.0 || p_m < 0.0 || p_m > 1.0)
        throw std::domain_error("probabilities outside [0,1]");
    AuthProbs a;
    a.p_b = sign_flip_block_prob(p_m, block_len);
    a.p_d = binomial_cdf(eta, block_len, p_t);
    const double random_tag_accept = binomial_cdf(eta, block_len, 0.5);
    a.p_f = (1.0 - a.p_b) * random_tag_accept + a.p_b * a.p_d;
    return a;
}

int select_threshold(int block_len, double pf_target, double p_b, double p_t) {
    if (!(pf_target > 0.0)) throw std::domain_error("pf_target must be positive");
    if (pf_target >= 1.0) return block_len;  // everything accepted
    // Single incremental pass: both CDFs accumulate term by term, and P_f is
    // nondecreasing in eta, so the scan stops at the first violation.
    const double log_half = -std::log(2.0);
    const double log_pt = p_t > 0.0 ? std::log(p_t) : -std::numeric_limits<double>::infinity();
    const double log_qt = p_t < 1.0 ? std::log1p(-p_t) : -std::numeric_limits<double>::infinity();
    double coin_cdf = 0.0, tag_cdf = 0.0;
    int best = -1;
    for (int eta = 0; eta <= block_len; ++eta) {
        coin_cdf += std::exp(log_binomial(block_len, eta) + block_len * log_half);
        if (p_t <= 0.0) tag_cdf = 1.0;
        else if (p_t >= 1.0) tag_cdf = (eta == block_len) ? 1.0 : 0.0;
        else tag_cdf += std::exp(log_binomial(block_len, eta) + eta * log_pt +
                                 (block_len - eta) * log_qt);
        const double pf = (1.0 - p_b) * std::min(coin_cdf, 1.0) + p_b * std::min(tag_cdf, 1.0);
        if (pf <= pf_target) best = eta;
        else break;
    }
    if (best < 0) throw std::domain_error("no threshold satisfies the false-alarm target");
    return best;
}

double info_ratio(double eve_tag_ser) {
    if (eve_tag_ser >= 1.0) return 0.0;
    const double raw = 1.0 + std::log2(1.0 - eve_tag_ser);
    return std::clamp(raw, 0.0, 1.0);
}

Rates secrecy_rates(const UserMetrics& user, const std::vector<EveMetrics>& eves, double p_d,
                    const std::vector<double>& i_e) {
    if (eves.size() != i_e.size()) throw std::invalid_argument("one info ratio per eavesdropper");
    Rates r;
    const double ru = std::log2(1.0 + user.sinr_m);
    for (std::size_t e = 0; e < eves.size(); ++e) {
        const double re = std::log2(1.0 + eves[e].sinr_m);
        r.r_classic += std::max(ru - re, 0.0);
        r.r_u += p_d * ru;
        r.r_e += i_e[e] * re;
        r.r_sec += std::max(p_d * ru - i_e[e] * re, 0.0);
    }
    return r;
}

Reliability reliability_metrics(double ser_m, double p_d, const std::vector<EveMetrics>& eves,
                                int block_len, WiretapModel model) {
    Reliability rel;
    rel.bler = 1.0 - std::exp(block_len * std::log1p(-ser_m));
    rel.afp = 1.0 - (1.0 - rel.bler) * p_d;
    double acc = 0.0;
    for (const auto& e : eves) {
        if (model == WiretapModel::kTagEncoded) {
            acc += (1.0 - e.ser_m) * (1.0 - e.ser_t);
        } else {
            acc += 1.0 - e.ser_m;
        }
    }
    rel.p_w = 1.0 - acc / static_cast<double>(eves.size());
    return rel;
}

namespace {

SecurityMetrics evaluate_impl(const SystemConfig& cfg, const channel::GeometryScenario& geom,
                              const PowerAllocation& p, WiretapModel model, int fixed_eta) {
    SecurityMetrics out;
    out.user = ue_metrics(cfg.num_antennas, cfg.tx_power_mw(), cfg.noise_power_mw(),
                          geom.beta_tilde, p);
    const int K = cfg.num_users;
    out.eves.reserve(K);
    out.i_e.reserve(K);
    for (int e = 0; e < K; ++e) {
        out.eves.push_back(eve_metrics(cfg.num_antennas, cfg.tx_power_mw(), cfg.noise_power_mw(),
                                       cfg.kappa_linear(), geom.beta[e], geom.alpha[e],
                                       geom.gamma[e], geom.beta_tilde, p));
        out.i_e.push_back(info_ratio(out.eves.back().ser_t));
        out.avg_eve_ser_m += out.eves.back().ser_m / K;
        out.avg_eve_ser_t += out.eves.back().ser_t / K;
        out.i_e_avg += out.i_e.back() / K;
    }
    out.eta = fixed_eta >= 0 ? fixed_eta
                             : select_threshold(cfg.block_len, cfg.pf_target,
                                                sign_flip_block_prob(out.user.ser_m, cfg.block_len),
                                                out.user.ser_t);
    const AuthProbs auth = auth_probabilities(out.user.ser_t, out.user.ser_m, cfg.block_len,
                                              out.eta);
    out.p_d = auth.p_d;
    out.p_f = auth.p_f;
    out.p_b = auth.p_b;
    out.rates = secrecy_rates(out.user, out.eves, out.p_d, out.i_e);
    out.rel = reliability_metrics(out.user.ser_m, out.p_d, out.eves, cfg.block_len, model);
    return out;
}

}  // namespace

SecurityMetrics evaluate_scenario(const SystemConfig& cfg, const channel::GeometryScenario& geom,
                                  const PowerAllocation& p, WiretapModel model) {
    return evaluate_impl(cfg, geom, p, model, -1);
}

SecurityMetrics evaluate_scenario_fixed_eta(const SystemConfig& cfg,
                                            const channel::GeometryScenario& geom,
                                            const PowerAllocation& p, int eta,
                                            WiretapModel model) {
    if (eta < 0 || eta > cfg.block_len) throw std::domain_error("threshold outside 0..T");
    return evaluate_impl(cfg, geom, p, model, eta);
}

}  // namespace tbesim::theory
