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

#ifndef TBESIM_OPTIMIZE_HPP
#define TBESIM_OPTIMIZE_HPP

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "tbesim/config.hpp"
#include "tbesim/rng.hpp"

namespace tbesim::optimize {

using Metric2d = std::function<double(const PowerAllocation&)>;

// Central differences, switching to one-sided steps at the box edges.
std::array<double, 2> numeric_gradient(const Metric2d& f, const PowerAllocation& p,
                                       double step = 1e-5);

struct DcaOptions {
    double tol = 1e-6;       // stop when the iterate step norm falls below this
    int max_iter = 100;
    double grad_step = 1e-5;
    double rho_min = 1e-3;   // box (0,1]^2, open end approximated
    double phi_min = 1e-3;
    PowerAllocation start{1.0 - 1e-3, 1.0};
};

struct DcaResult {
    PowerAllocation p;
    double r_sec_clipped = 0.0;    // per-user clipped objective at the solution
    double r_sec_unclipped = 0.0;  // R_U - R_E without the per-user clip
    int iterations = 0;
    bool converged = false;
    std::vector<double> dc_objective_trace;  // R_E - R_U at each iterate
};

// Iterative DC ascent for max R_sec: linearize R_E at the iterate via its
// numeric gradient, then solve the concave surrogate max R_U(p) + <p, q> by
// projected gradient ascent on the box. R_E and R_U are supplied separately;
// r_sec_clipped is recomputed from the provided evaluator at the solution.
DcaResult dca_maximize_rsec(const Metric2d& r_u, const Metric2d& r_e,
                            const Metric2d& r_sec_clipped, const DcaOptions& opts = {});

// Two-start variant: runs the plain ascent from the default start and from
// the better of two coarse-grid local peaks, returning the best solution.
DcaResult dca_two_start(const Metric2d& r_u, const Metric2d& r_e,
                        const Metric2d& r_sec_clipped, const DcaOptions& opts = {});

enum class ProbePlacement { kGoldenSection, kSeededRandom };

struct BisectionOptions {
    double tol = 1e-5;
    ProbePlacement placement = ProbePlacement::kGoldenSection;
    std::uint64_t seed = 0x5eed;            // used by the random placement
    int unimodality_grid = 64;              // fallback scan size
};

// Two-probe bracket shrinking for a unimodal minimum on [lo, hi]. Keeps the
// half containing the smaller probe value and returns the final midpoint.
// A bracket violating unimodality falls back to a dense grid argmin.
double bisection_rho(const std::function<double(double)>& objective, double lo, double hi,
                     const BisectionOptions& opts = {});

// Bracketing bisection for constraint(phi) = target on phi in (phi_min, 1].
// `increasing` states the constraint's monotonicity in phi. Returns nullopt
// when the target is unreachable on the interval.
std::optional<double> invert_constraint_phi(const std::function<double(double)>& constraint,
                                            double target, bool increasing,
                                            double phi_min = 1e-3, double tol = 1e-8);

struct ConstraintSpec {
    double pw_min = 0.0;  // P_{w,0}: wiretap SER must stay at or above this
    double pd_min = 0.0;  // P_{d,0}: authentication probability floor
};

struct AfpProblem {
    Metric2d afp;
    Metric2d p_w;  // decreasing in phi and in rho
    Metric2d p_d;  // increasing in phi, decreasing in rho
    double rho_lo = 0.9;
    double rho_hi = 1.0;
};

struct AfpSolution {
    PowerAllocation p;
    double afp = 1.0;
    int active_case = 0;  // 1..4 per the complementary-slackness split; 0 = infeasible
    bool feasible = false;
};

// Tries the four complementary-slackness cases in order: unconstrained
// (phi* = 1), secrecy active, authentication active, both active. Returns
// the first feasible case; an all-infeasible problem reports AFP = 1.
AfpSolution solve_constrained_afp(const AfpProblem& prob, const ConstraintSpec& spec,
                                  const BisectionOptions& opts = {});

enum class Shape { kUnimodalUp, kUnimodalDown, kMonotone, kViolation };

struct UnimodalityReport {
    Shape shape = Shape::kMonotone;
    int sign_changes = 0;
    std::vector<int> violation_indices;
};

// Counts sign changes of successive differences over an N-point scan, with a
// deadband absorbing flat stretches and numerical noise.
UnimodalityReport unimodality_probe(const std::function<double(double)>& f, double lo, double hi,
                                    int n_points, double deadband = 1e-12);

// Exponential upper bound Q(x) ~ exp(-x^2/2)/2 for x > 0, as used by the
// quasi-concavity arguments the probes mirror.
double q_function_bound(double x);

}  // namespace tbesim::optimize

#endif
