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

#include "tbesim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tbesim::optimize {

namespace {

constexpr double kBoxLo = 1e-6;  // open interval (0,1] approximated from inside

inline double clamp01(double v, double lo) { return std::clamp(v, lo, 1.0); }

double directional_diff(const Metric2d& f, PowerAllocation p, bool rho_axis, double at,
                        double step, double lo) {
    double fwd = at + step, bwd = at - step;
    if (fwd > 1.0) fwd = at;          // one-sided at the upper edge
    if (bwd < lo) bwd = at;           // one-sided at the lower edge
    if (fwd == bwd) return 0.0;
    PowerAllocation a = p, b = p;
    (rho_axis ? a.rho : a.phi) = fwd;
    (rho_axis ? b.rho : b.phi) = bwd;
    return (f(a) - f(b)) / (fwd - bwd);
}

}  // namespace

std::array<double, 2> numeric_gradient(const Metric2d& f, const PowerAllocation& p, double step) {
    return {directional_diff(f, p, true, p.rho, step, kBoxLo),
            directional_diff(f, p, false, p.phi, step, kBoxLo)};
}

namespace {

// Projected gradient ascent with backtracking for the DC surrogate
// J(p) = r_u(p) + <p, q> on the box [rho_min,1] x [phi_min,1].
PowerAllocation maximize_surrogate(const Metric2d& r_u, const std::array<double, 2>& q,
                                   PowerAllocation start, const DcaOptions& opts) {
    auto j = [&](const PowerAllocation& p) { return r_u(p) + q[0] * p.rho + q[1] * p.phi; };
    PowerAllocation x = start;
    double jx = j(x);
    for (int it = 0; it < 400; ++it) {
        std::array<double, 2> g = numeric_gradient(j, x, opts.grad_step);
        double step = 0.25;
        PowerAllocation accepted = x;
        double j_accepted = jx;
        while (step > 1e-14) {
            PowerAllocation cand;
            cand.rho = clamp01(x.rho + step * g[0], opts.rho_min);
            cand.phi = clamp01(x.phi + step * g[1], opts.phi_min);
            const double jc = j(cand);
            if (jc > j_accepted) {
                accepted = cand;
                j_accepted = jc;
                break;
            }
            step *= 0.5;
        }
        const double moved = std::hypot(accepted.rho - x.rho, accepted.phi - x.phi);
        x = accepted;
        jx = j_accepted;
        if (moved <= 1e-8) break;
    }
    return x;
}

}  // namespace

DcaResult dca_maximize_rsec(const Metric2d& r_u, const Metric2d& r_e,
                            const Metric2d& r_sec_clipped, const DcaOptions& opts) {
    DcaResult res;
    PowerAllocation p;
    p.rho = clamp01(opts.start.rho, opts.rho_min);
    p.phi = clamp01(opts.start.phi, opts.phi_min);
    res.dc_objective_trace.push_back(r_e(p) - r_u(p));
    for (int it = 0; it < opts.max_iter; ++it) {
        const std::array<double, 2> grad_re = numeric_gradient(r_e, p, opts.grad_step);
        const std::array<double, 2> q{-grad_re[0], -grad_re[1]};
        if (!std::isfinite(q[0]) || !std::isfinite(q[1]))
            throw std::runtime_error("non-finite metric during DC iteration");
        const PowerAllocation next = maximize_surrogate(r_u, q, p, opts);
        const double moved = std::hypot(next.rho - p.rho, next.phi - p.phi);
        p = next;
        res.iterations = it + 1;
        res.dc_objective_trace.push_back(r_e(p) - r_u(p));
        if (moved <= opts.tol) {
            res.converged = true;
            break;
        }
    }
    res.p = p;
    res.r_sec_clipped = r_sec_clipped(p);
    res.r_sec_unclipped = r_u(p) - r_e(p);
    return res;
}

DcaResult dca_two_start(const Metric2d& r_u, const Metric2d& r_e, const Metric2d& r_sec_clipped,
                        const DcaOptions& opts) {
    DcaResult best = dca_maximize_rsec(r_u, r_e, r_sec_clipped, opts);

    // Coarse scan for distinct local peaks of the clipped objective; the DC
    // landscape is known to carry up to two.
    const int nr = 21, np = 21;
    std::vector<double> grid(static_cast<std::size_t>(nr) * np);
    auto cell = [&](int i, int j) -> double& { return grid[static_cast<std::size_t>(i) * np + j]; };
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < np; ++j) {
            PowerAllocation p;
            p.rho = 0.9 + 0.1 * i / (nr - 1.0);
            p.phi = std::max(opts.phi_min, static_cast<double>(j) / (np - 1.0));
            cell(i, j) = r_sec_clipped(p);
        }
    }
    std::vector<std::pair<double, PowerAllocation>> peaks;
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < np; ++j) {
            bool local_max = true;
            for (int di = -1; di <= 1 && local_max; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= nr || jj >= np || (di == 0 && dj == 0)) continue;
                    if (cell(ii, jj) > cell(i, j)) {
                        local_max = false;
                        break;
                    }
                }
            }
            if (local_max) {
                PowerAllocation p;
                p.rho = 0.9 + 0.1 * i / (nr - 1.0);
                p.phi = std::max(opts.phi_min, static_cast<double>(j) / (np - 1.0));
                peaks.emplace_back(cell(i, j), p);
            }
        }
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    const std::size_t n_starts = std::min<std::size_t>(2, peaks.size());
    for (std::size_t s = 0; s < n_starts; ++s) {
        DcaOptions o = opts;
        o.start = peaks[s].second;
        const DcaResult r = dca_maximize_rsec(r_u, r_e, r_sec_clipped, o);
        if (r.r_sec_clipped > best.r_sec_clipped) best = r;
    }
    return best;
}

double bisection_rho(const std::function<double(double)>& objective, double lo, double hi,
                     const BisectionOptions& opts) {
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    Rng rng(opts.seed);
    int guard = 0;
    while (b - a > opts.tol && guard++ < 400) {
        double r1, r2;
        if (opts.placement == ProbePlacement::kGoldenSection) {
            r1 = b - golden * (b - a);
            r2 = a + golden * (b - a);
        } else {
            r1 = rng.uniform(a, b);
            r2 = rng.uniform(a, b);
            if (r1 > r2) std::swap(r1, r2);
            if (r2 - r1 < 1e-15) continue;
        }
        if (objective(r1) < objective(r2)) {
            b = r2;
        } else {
            a = r1;
        }
    }
    double best = 0.5 * (a + b);
    double best_val = objective(best);

    // Unimodality violation check: a dense scan must not beat the bracket
    // result by more than noise. When it does, fall back to the grid argmin.
    if (opts.unimodality_grid > 1) {
        double grid_best = best, grid_val = best_val;
        for (int i = 0; i < opts.unimodality_grid; ++i) {
            const double x = lo + (hi - lo) * i / (opts.unimodality_grid - 1.0);
            const double v = objective(x);
            if (v < grid_val) {
                grid_val = v;
                grid_best = x;
            }
        }
        if (grid_val < best_val - std::max(1e-12, 1e-9 * std::abs(best_val))) {
            const double span = (hi - lo) / (opts.unimodality_grid - 1.0);
            BisectionOptions refine = opts;
            refine.unimodality_grid = 0;
            best = bisection_rho(objective, std::max(lo, grid_best - span),
                                 std::min(hi, grid_best + span), refine);
        }
    }
    return best;
}

std::optional<double> invert_constraint_phi(const std::function<double(double)>& constraint,
                                            double target, bool increasing, double phi_min,
                                            double tol) {
    double lo = phi_min, hi = 1.0;
    double f_lo = constraint(lo), f_hi = constraint(hi);
    auto within = [&](double a, double b) { return target >= std::min(a, b) && target <= std::max(a, b); };
    if (!within(f_lo, f_hi)) {
        // Boundary roots up to solver precision.
        if (std::abs(f_hi - target) <= 1e-12) return 1.0;
        if (std::abs(f_lo - target) <= 1e-12) return phi_min;
        return std::nullopt;
    }
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = constraint(mid);
        const bool go_up = increasing ? (fm < target) : (fm > target);
        if (go_up) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

constexpr double kConstraintSlack = 1e-9;

bool feasible(const AfpProblem& prob, const ConstraintSpec& spec, const PowerAllocation& p) {
    return prob.p_w(p) >= spec.pw_min - kConstraintSlack &&
           prob.p_d(p) >= spec.pd_min - kConstraintSlack;
}

}  // namespace

AfpSolution solve_constrained_afp(const AfpProblem& prob, const ConstraintSpec& spec,
                                  const BisectionOptions& opts) {
    AfpSolution sol;
    auto at = [](double rho, double phi) { return PowerAllocation{rho, phi}; };

    // Case 1: constraints inactive at the unconstrained optimum, phi* = 1.
    {
        const double rho = bisection_rho(
            [&](double r) { return prob.afp(at(r, 1.0)); }, prob.rho_lo, prob.rho_hi, opts);
        const PowerAllocation p = at(rho, 1.0);
        if (feasible(prob, spec, p)) {
            sol.p = p;
            sol.afp = prob.afp(p);
            sol.active_case = 1;
            sol.feasible = true;
            return sol;
        }
    }

    const double inf = std::numeric_limits<double>::infinity();

    // Case 2: secrecy active, phi = P_w^{-1}(P_w0 | rho).
    {
        auto phi_of_rho = [&](double rho) {
            return invert_constraint_phi(
                [&](double phi) { return prob.p_w(at(rho, phi)); }, spec.pw_min, false);
        };
        auto objective = [&](double rho) {
            const auto phi = phi_of_rho(rho);
            return phi ? prob.afp(at(rho, *phi)) : inf;
        };
        const double rho = bisection_rho(objective, prob.rho_lo, prob.rho_hi, opts);
        const auto phi = phi_of_rho(rho);
        if (phi) {
            const PowerAllocation p = at(rho, *phi);
            if (prob.p_d(p) >= spec.pd_min - kConstraintSlack) {
                sol.p = p;
                sol.afp = prob.afp(p);
                sol.active_case = 2;
                sol.feasible = true;
                return sol;
            }
        }
    }

    // Case 3: authentication active, phi = P_d^{-1}(P_d0 | rho).
    {
        auto phi_of_rho = [&](double rho) {
            return invert_constraint_phi(
                [&](double phi) { return prob.p_d(at(rho, phi)); }, spec.pd_min, true);
        };
        auto objective = [&](double rho) {
            const auto phi = phi_of_rho(rho);
            return phi ? prob.afp(at(rho, *phi)) : inf;
        };
        const double rho = bisection_rho(objective, prob.rho_lo, prob.rho_hi, opts);
        const auto phi = phi_of_rho(rho);
        if (phi) {
            const PowerAllocation p = at(rho, *phi);
            if (prob.p_w(p) >= spec.pw_min - kConstraintSlack) {
                sol.p = p;
                sol.afp = prob.afp(p);
                sol.active_case = 3;
                sol.feasible = true;
                return sol;
            }
        }
    }

    // Case 4: both active. Walk the P_w-inverted curve until the P_d residual
    // crosses zero.
    {
        auto phi_of_rho = [&](double rho) {
            return invert_constraint_phi(
                [&](double phi) { return prob.p_w(at(rho, phi)); }, spec.pw_min, false);
        };
        auto residual = [&](double rho) -> std::optional<double> {
            const auto phi = phi_of_rho(rho);
            if (!phi) return std::nullopt;
            return prob.p_d(at(rho, *phi)) - spec.pd_min;
        };
        const int n = 64;
        double prev_rho = prob.rho_lo;
        std::optional<double> prev = residual(prev_rho);
        for (int i = 1; i < n; ++i) {
            const double rho = prob.rho_lo + (prob.rho_hi - prob.rho_lo) * i / (n - 1.0);
            const std::optional<double> cur = residual(rho);
            if (prev && cur && (*prev <= 0.0) != (*cur <= 0.0)) {
                double a = prev_rho, b = rho;
                for (int it = 0; it < 100 && b - a > 1e-10; ++it) {
                    const double mid = 0.5 * (a + b);
                    const auto rm = residual(mid);
                    if (!rm) break;
                    if ((*prev <= 0.0) == (*rm <= 0.0)) a = mid;
                    else b = mid;
                }
                const double rho_star = 0.5 * (a + b);
                const auto phi = phi_of_rho(rho_star);
                if (phi) {
                    const PowerAllocation p = at(rho_star, *phi);
                    if (feasible(prob, spec, p)) {
                        sol.p = p;
                        sol.afp = prob.afp(p);
                        sol.active_case = 4;
                        sol.feasible = true;
                        return sol;
                    }
                }
            }
            if (cur) {
                prev = cur;
                prev_rho = rho;
            }
        }
    }

    sol.afp = 1.0;  // saturation: nothing satisfies the constraint pair
    sol.active_case = 0;
    sol.feasible = false;
    return sol;
}

UnimodalityReport unimodality_probe(const std::function<double(double)>& f, double lo, double hi,
                                    int n_points, double deadband) {
    UnimodalityReport rep;
    if (n_points < 3) return rep;
    std::vector<double> vals(n_points);
    for (int i = 0; i < n_points; ++i) {
        vals[i] = f(lo + (hi - lo) * i / (n_points - 1.0));
    }
    int last_sign = 0;
    int first_sign = 0;
    for (int i = 1; i < n_points; ++i) {
        const double d = vals[i] - vals[i - 1];
        if (std::abs(d) <= deadband) continue;
        const int sign = d > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) {
            ++rep.sign_changes;
            rep.violation_indices.push_back(i);
        }
        if (first_sign == 0) first_sign = sign;
        last_sign = sign;
    }
    if (rep.sign_changes == 0) {
        rep.shape = Shape::kMonotone;
    } else if (rep.sign_changes == 1) {
        rep.shape = (first_sign > 0) ? Shape::kUnimodalUp : Shape::kUnimodalDown;
        rep.violation_indices.clear();
    } else {
        rep.shape = Shape::kViolation;
    }
    return rep;
}

double q_function_bound(double x) { return 0.5 * std::exp(-0.5 * x * x); }

}  // namespace tbesim::optimize
