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

#include "tbesim/presets.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tbesim/optimize.hpp"
#include "tbesim/simkit.hpp"

namespace tbesim::presets {

namespace {

// Reserved stream indices, outside the block-index range used by the
// Monte Carlo runner.
constexpr std::uint64_t kGeometryStream = 0xffffffffffff0001ULL;
constexpr std::uint64_t kKeyStream = 0xffffffffffff0002ULL;

struct Csv {
    explicit Csv(const std::filesystem::path& path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open output file: " + path.string());
        out_.imbue(std::locale::classic());
    }
    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) out_ << ',';
            out_ << cols[i];
        }
        out_ << '\n';
    }
    void row(const std::vector<double>& vals) {
        char buf[64];
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) out_ << ',';
            std::snprintf(buf, sizeof buf, "%.12g", vals[i]);
            out_ << buf;
        }
        out_ << '\n';
    }

  private:
    std::ofstream out_;
};

struct Scenario {
    SystemConfig cfg;
    channel::GeometryScenario geom;
    tbe::KeyMaterial key;
};

Scenario make_scenario(const SystemConfig& cfg, std::uint64_t seed) {
    Scenario s;
    s.cfg = cfg;
    Rng geo_rng(seed, kGeometryStream);
    s.geom = channel::draw_geometry(cfg, geo_rng);
    Rng key_rng(seed, kKeyStream);
    s.key = tbe::KeyMaterial::random(cfg.key_bits, key_rng);
    return s;
}

double clipped_rsec(const SystemConfig& cfg, const channel::GeometryScenario& geom,
                    const PowerAllocation& p) {
    return theory::evaluate_scenario(cfg, geom, p).rates.r_sec;
}

optimize::DcaResult optimize_rsec(const SystemConfig& cfg, const channel::GeometryScenario& geom,
                                  bool two_start) {
    auto r_u = [&](const PowerAllocation& p) {
        return theory::evaluate_scenario(cfg, geom, p).rates.r_u;
    };
    auto r_e = [&](const PowerAllocation& p) {
        return theory::evaluate_scenario(cfg, geom, p).rates.r_e;
    };
    auto r_sec = [&](const PowerAllocation& p) { return clipped_rsec(cfg, geom, p); };
    return two_start ? optimize::dca_two_start(r_u, r_e, r_sec)
                     : optimize::dca_maximize_rsec(r_u, r_e, r_sec);
}

// Grid argmax of the clipped baseline secrecy rate over the power box.
std::pair<double, PowerAllocation> optimize_baseline(const SystemConfig& cfg,
                                                     const channel::GeometryScenario& geom,
                                                     int nr = 101, int np = 101) {
    double best = -1.0;
    PowerAllocation best_p;
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < np; ++j) {
            PowerAllocation p;
            p.rho = 0.9 + 0.1 * i / (nr - 1.0);
            p.phi = std::max(1e-3, static_cast<double>(j) / (np - 1.0));
            const double v = baseline_no_tbe(cfg, geom, p);
            if (v > best) {
                best = v;
                best_p = p;
            }
        }
    }
    return {best, best_p};
}

optimize::AfpProblem afp_problem(const SystemConfig& cfg, const channel::GeometryScenario& geom,
                                 theory::WiretapModel model) {
    optimize::AfpProblem prob;
    prob.afp = [&cfg, &geom, model](const PowerAllocation& p) {
        return theory::evaluate_scenario(cfg, geom, p, model).rel.afp;
    };
    prob.p_w = [&cfg, &geom, model](const PowerAllocation& p) {
        return theory::evaluate_scenario(cfg, geom, p, model).rel.p_w;
    };
    prob.p_d = [&cfg, &geom, model](const PowerAllocation& p) {
        return theory::evaluate_scenario(cfg, geom, p, model).p_d;
    };
    return prob;
}

int preset_ser_sweep(const ExperimentArgs& args, const SystemConfig& cfg, bool sweep_rho) {
    const Scenario sc = make_scenario(cfg, args.seed);
    Csv csv(std::filesystem::path(args.out_dir) /
            (sweep_rho ? "ser_vs_rho.csv" : "ser_vs_phi.csv"));
    csv.header({sweep_rho ? "rho" : "phi", "ser_m_theory", "ser_m_sim", "ser_m_stderr",
                "ser_t_theory", "ser_t_sim", "ser_t_stderr", "eve_ser_m_theory", "eve_ser_m_sim",
                "eve_ser_m_stderr", "eve_ser_t_theory", "eve_ser_t_sim", "eve_ser_t_stderr"});
    const int steps = 50;
    int pass = 0, total = 0;
    for (int i = 0; i <= steps; ++i) {
        PowerAllocation p;
        if (sweep_rho) {
            p.rho = 0.9 + 0.1 * i / static_cast<double>(steps);
            p.phi = 1.0;
        } else {
            p.rho = 0.95;
            p.phi = 0.2 + 0.8 * i / static_cast<double>(steps);
        }
        const auto thr = theory::evaluate_scenario(sc.cfg, sc.geom, p);
        const auto rep = simkit::run_montecarlo(sc.cfg, sc.geom, sc.key, p, args.trials,
                                                args.seed);
        const auto table = simkit::compare_theory_sim(rep, thr, rep.scenario_digest);
        for (const auto& r : table.rows) {
            if (r.metric.find("ser") == std::string::npos) continue;
            ++total;
            pass += r.pass;
        }
        csv.row({sweep_rho ? p.rho : p.phi, thr.user.ser_m, rep.user_msg_ser.estimate,
                 rep.user_msg_ser.std_err, thr.user.ser_t, rep.user_tag_ser.estimate,
                 rep.user_tag_ser.std_err, thr.avg_eve_ser_m, rep.eve_msg_ser.estimate,
                 rep.eve_msg_ser.std_err, thr.avg_eve_ser_t, rep.eve_tag_ser.estimate,
                 rep.eve_tag_ser.std_err});
    }
    std::cout << "theory/sim SER cells at 3 sigma: " << pass << "/" << total << " pass\n";
    if (args.strict && pass < total) return kExitAcceptanceFailure;
    return kExitOk;
}

int preset_roc(const ExperimentArgs& args, const SystemConfig& cfg) {
    const Scenario sc = make_scenario(cfg, args.seed);
    Csv csv(std::filesystem::path(args.out_dir) / "roc.csv");
    csv.header({"rho", "eta", "pf_theory", "pd_theory", "pf_prior", "pf_sim", "pf_sim_stderr",
                "pd_sim", "pd_sim_stderr"});
    const double rhos[] = {0.9999, 0.9995, 0.999, 0.997};
    for (const double rho : rhos) {
        PowerAllocation p{rho, 1.0};
        const auto thr = theory::evaluate_scenario(sc.cfg, sc.geom, p);
        const auto roc = simkit::roc_sweep(sc.cfg, sc.geom, sc.key, p, args.trials, args.seed);
        for (int eta = 0; eta <= sc.cfg.block_len; ++eta) {
            const auto a = theory::auth_probabilities(thr.user.ser_t, thr.user.ser_m,
                                                      sc.cfg.block_len, eta);
            const double pf_prior = theory::binomial_cdf(eta, sc.cfg.block_len, 0.5);
            csv.row({rho, static_cast<double>(eta), a.p_f, a.p_d, pf_prior, roc[eta].p_f,
                     roc[eta].p_f_stderr, roc[eta].p_d, roc[eta].p_d_stderr});
        }
    }
    std::cout << "roc.csv written for rho in {0.9999, 0.9995, 0.999, 0.997}\n";
    return kExitOk;
}

int preset_secrecy_surface(const ExperimentArgs& args, const SystemConfig& cfg) {
    const Scenario sc = make_scenario(cfg, args.seed);
    Csv csv(std::filesystem::path(args.out_dir) / "secrecy_surface.csv");
    csv.header({"rho", "phi", "r_sec", "r_u", "r_e", "r_classic"});
    const int nr = 81, np = 81;
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < np; ++j) {
            PowerAllocation p;
            p.rho = 0.9 + 0.1 * i / (nr - 1.0);
            p.phi = std::max(1e-3, static_cast<double>(j) / (np - 1.0));
            const auto thr = theory::evaluate_scenario(sc.cfg, sc.geom, p);
            csv.row({p.rho, p.phi, thr.rates.r_sec, thr.rates.r_u, thr.rates.r_e,
                     thr.rates.r_classic});
        }
    }
    const auto dca = optimize_rsec(sc.cfg, sc.geom, false);
    std::cout << "dca: rho*=" << dca.p.rho << " phi*=" << dca.p.phi
              << " r_sec=" << dca.r_sec_clipped << " iterations=" << dca.iterations << "\n";
    return kExitOk;
}

int preset_secrecy_compare(const ExperimentArgs& args, const SystemConfig& cfg) {
    Csv csv(std::filesystem::path(args.out_dir) / "secrecy_compare.csv");
    csv.header({"delta_theta_deg", "r_sec_tbe", "rho_tbe", "phi_tbe", "r_baseline", "rho_base",
                "phi_base"});
    for (int dth = 0; dth <= 10; ++dth) {
        SystemConfig c = cfg;
        c.angle_offset_deg = dth;
        const Scenario sc = make_scenario(c, args.seed);
        const auto tbe_opt = optimize_rsec(sc.cfg, sc.geom, true);
        const auto [base_val, base_p] = optimize_baseline(sc.cfg, sc.geom);
        csv.row({static_cast<double>(dth), tbe_opt.r_sec_clipped, tbe_opt.p.rho, tbe_opt.p.phi,
                 base_val, base_p.rho, base_p.phi});
    }
    std::cout << "secrecy_compare.csv written for Delta_theta in 0..10 deg\n";
    return kExitOk;
}

int preset_afp_surface(const ExperimentArgs& args, const SystemConfig& cfg) {
    const Scenario sc = make_scenario(cfg, args.seed);
    Csv csv(std::filesystem::path(args.out_dir) / "afp_surface.csv");
    csv.header({"rho", "phi", "afp", "p_d", "p_w"});
    const int nr = 81, np = 41;
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < np; ++j) {
            PowerAllocation p;
            p.rho = 0.9 + 0.1 * i / (nr - 1.0);
            p.phi = std::max(1e-3, static_cast<double>(j) / (np - 1.0));
            const auto thr = theory::evaluate_scenario(sc.cfg, sc.geom, p);
            csv.row({p.rho, p.phi, thr.rel.afp, thr.p_d, thr.rel.p_w});
        }
    }
    const auto prob = afp_problem(sc.cfg, sc.geom, theory::WiretapModel::kTagEncoded);
    const auto sol = optimize::solve_constrained_afp(prob, {0.0, 0.0});
    const auto thr = theory::evaluate_scenario(sc.cfg, sc.geom, sol.p);
    std::cout << "unconstrained afp optimum: rho*=" << sol.p.rho << " phi*=" << sol.p.phi
              << " afp=" << sol.afp << " p_d=" << thr.p_d << " case=" << sol.active_case << "\n";
    return kExitOk;
}

int preset_afp_constraint(const ExperimentArgs& args, const SystemConfig& cfg) {
    const Scenario sc = make_scenario(cfg, args.seed);
    Csv csv(std::filesystem::path(args.out_dir) / "afp_constraint.csv");
    csv.header({"pw0", "afp_tbe", "case_tbe", "rho_tbe", "phi_tbe", "afp_prior", "case_prior",
                "rho_prior", "phi_prior"});
    const double pd0 = 0.999;
    const auto prob_tbe = afp_problem(sc.cfg, sc.geom, theory::WiretapModel::kTagEncoded);
    const auto prob_prior = afp_problem(sc.cfg, sc.geom, theory::WiretapModel::kPriorTagEmbedding);
    bool any_feasible = false;
    for (int i = 0; i < 30; ++i) {
        const double pw0 = 0.01 + (0.3 - 0.01) * i / 29.0;
        const auto sol_t = optimize::solve_constrained_afp(prob_tbe, {pw0, pd0});
        const auto sol_p = optimize::solve_constrained_afp(prob_prior, {pw0, pd0});
        any_feasible = any_feasible || sol_t.feasible || sol_p.feasible;
        csv.row({pw0, sol_t.afp, static_cast<double>(sol_t.active_case), sol_t.p.rho,
                 sol_t.p.phi, sol_p.afp, static_cast<double>(sol_p.active_case), sol_p.p.rho,
                 sol_p.p.phi});
    }
    std::cout << "afp_constraint.csv written (P_d0 = " << pd0 << ")\n";
    if (!any_feasible) {
        std::cerr << "every constraint point was infeasible\n";
        return kExitInfeasible;
    }
    return kExitOk;
}

int preset_optimize(const ExperimentArgs& args, const SystemConfig& cfg) {
    const Scenario sc = make_scenario(cfg, args.seed);
    const auto dca = optimize_rsec(sc.cfg, sc.geom, true);
    std::cout << "secrecy: rho*=" << dca.p.rho << " phi*=" << dca.p.phi
              << " r_sec=" << dca.r_sec_clipped << " (unclipped " << dca.r_sec_unclipped
              << ", " << dca.iterations << " iterations)\n";
    const auto prob = afp_problem(sc.cfg, sc.geom, theory::WiretapModel::kTagEncoded);
    const auto sol = optimize::solve_constrained_afp(prob, {0.0, 0.0});
    std::cout << "afp: rho*=" << sol.p.rho << " phi*=" << sol.p.phi << " afp=" << sol.afp
              << " case=" << sol.active_case << "\n";
    Csv csv(std::filesystem::path(args.out_dir) / "optimize.csv");
    csv.header({"solver", "rho", "phi", "objective", "kkt_case"});
    csv.row({0.0, dca.p.rho, dca.p.phi, dca.r_sec_clipped, 0.0});
    csv.row({1.0, sol.p.rho, sol.p.phi, sol.afp, static_cast<double>(sol.active_case)});
    if (!sol.feasible) return kExitInfeasible;
    return kExitOk;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "ser-vs-rho", "ser-vs-phi",  "roc",         "secrecy-surface",
        "secrecy-compare", "afp-surface", "afp-constraint", "optimize"};
    return names;
}

double baseline_no_tbe(const SystemConfig& cfg, const channel::GeometryScenario& geom,
                       const PowerAllocation& p) {
    const auto thr = theory::evaluate_scenario(cfg, geom, p);
    const double ru = std::log2(1.0 + thr.user.sinr_m);
    double rate = 0.0;
    for (const auto& e : thr.eves) {
        rate += std::max(thr.p_d * ru - std::log2(1.0 + e.sinr_m), 0.0);
    }
    return rate;
}

int run_experiment(const ExperimentArgs& args) {
    SystemConfig cfg;
    try {
        if (!args.config_path.empty()) cfg = load_config_file(args.config_path);
        cfg.validate();
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfigError;
    }
    std::error_code ec;
    std::filesystem::create_directories(args.out_dir, ec);

    try {
        if (args.preset == "ser-vs-rho") return preset_ser_sweep(args, cfg, true);
        if (args.preset == "ser-vs-phi") return preset_ser_sweep(args, cfg, false);
        if (args.preset == "roc") return preset_roc(args, cfg);
        if (args.preset == "secrecy-surface") return preset_secrecy_surface(args, cfg);
        if (args.preset == "secrecy-compare") return preset_secrecy_compare(args, cfg);
        if (args.preset == "afp-surface") return preset_afp_surface(args, cfg);
        if (args.preset == "afp-constraint") return preset_afp_constraint(args, cfg);
        if (args.preset == "optimize") return preset_optimize(args, cfg);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitConfigError;
    }
    std::cerr << "unknown preset: " << args.preset << "\n";
    return kExitConfigError;
}

}  // namespace tbesim::presets
