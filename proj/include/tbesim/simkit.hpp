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

#ifndef TBESIM_SIMKIT_HPP
#define TBESIM_SIMKIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tbesim/channel.hpp"
#include "tbesim/tbe.hpp"
#include "tbesim/theory.hpp"

namespace tbesim::simkit {

// Associatively mergeable integer tallies. Per-block work units produce one
// of these; merging in any order gives bit-identical totals, which is what
// makes the parallel runner reproducible across thread counts.
struct TrialCounts {
    std::uint64_t blocks = 0;
    std::uint64_t user_slots = 0;
    std::uint64_t user_msg_errors = 0;
    std::uint64_t user_tag_errors = 0;
    std::uint64_t eve_slots = 0;
    std::uint64_t eve_msg_errors = 0;
    std::uint64_t eve_tag_errors = 0;
    std::uint64_t eve_wiretap_errors = 0;   // slots with a message or tag error
    std::uint64_t legit_blocks = 0;
    std::uint64_t legit_accepted = 0;
    std::uint64_t jam_blocks = 0;
    std::uint64_t jam_accepted = 0;
    std::uint64_t afp_blocks = 0;
    std::uint64_t afp_failures = 0;         // not (error-free and accepted)
    std::uint64_t eve_combine_skipped = 0;
    std::vector<std::uint64_t> legit_stat_hist;  // histogram of L, size T+1
    std::vector<std::uint64_t> jam_stat_hist;

    void merge(const TrialCounts& other);
};

struct MetricEstimate {
    double estimate = 0.0;
    double std_err = 0.0;
};

struct TrialReport {
    std::uint64_t n_blocks = 0;
    std::uint64_t seed = 0;
    std::string scenario_digest;
    int eta = 0;
    MetricEstimate user_msg_ser;
    MetricEstimate user_tag_ser;
    MetricEstimate eve_msg_ser;
    MetricEstimate eve_tag_ser;
    MetricEstimate p_d;
    MetricEstimate p_f;
    MetricEstimate leakage_ratio;  // 1 + log2(1 - eve tag SER), clipped to [0,1]
    MetricEstimate afp;
    MetricEstimate p_w;
    TrialCounts counts;
};

struct SimOptions {
    int n_threads = 0;          // 0 = library default
    bool zero_noise = false;    // diagnostic override, removes AWGN
    bool collect_histograms = false;
    bool resample_geometry = false;  // fresh deployment each block
};

// Hex digest of the scenario (config + geometry), for pairing reports with
// theory evaluations.
std::string scenario_digest(const SystemConfig& cfg, const channel::GeometryScenario& geom);

// Monte Carlo over n_blocks: per block a fresh fading draw, fresh AN and
// AWGN, the full legitimate chain for every user, the full eavesdropper
// chain, and one jamming block for the false-alarm estimate. Per-block RNG
// streams derive from (master_seed, block index); identical inputs give a
// bit-identical report at any thread count.
TrialReport run_montecarlo(const SystemConfig& cfg, const channel::GeometryScenario& geom,
                           const tbe::KeyMaterial& key, const PowerAllocation& p,
                           std::uint64_t n_blocks, std::uint64_t master_seed,
                           const SimOptions& opts = {});

// Plain single-threaded loop over the same per-block kernel. The OpenMP
// runner must reproduce its counts exactly.
TrialReport run_montecarlo_serial(const SystemConfig& cfg, const channel::GeometryScenario& geom,
                                  const tbe::KeyMaterial& key, const PowerAllocation& p,
                                  std::uint64_t n_blocks, std::uint64_t master_seed,
                                  const SimOptions& opts = {});

struct RocPoint {
    int eta = 0;
    double p_f = 0.0;
    double p_d = 0.0;
    double p_f_stderr = 0.0;
    double p_d_stderr = 0.0;
};

// One simulation pass; decisions re-thresholded at every eta from the stored
// statistic histograms, no re-simulation per point.
std::vector<RocPoint> roc_sweep(const SystemConfig& cfg, const channel::GeometryScenario& geom,
                                const tbe::KeyMaterial& key, const PowerAllocation& p,
                                std::uint64_t n_blocks, std::uint64_t master_seed,
                                const SimOptions& opts = {});

struct ComparisonRow {
    std::string metric;
    double sim = 0.0;
    double theory = 0.0;
    double std_err = 0.0;
    double z = 0.0;
    bool pass = false;  // |z| <= 3
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;
    int n_pass = 0;
    int n_total = 0;
};

// Per-metric |sim - theory| z-scores at 3 sigma. Throws std::invalid_argument
// on a scenario digest mismatch.
ComparisonTable compare_theory_sim(const TrialReport& report, const theory::SecurityMetrics& thr,
                                   const std::string& theory_digest);

}  // namespace tbesim::simkit

#endif
