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

#ifndef TBESIM_TESTS_HELPERS_HPP
#define TBESIM_TESTS_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "tbesim/channel.hpp"
#include "tbesim/config.hpp"
#include "tbesim/rng.hpp"

namespace tbesim::test {

// Deployment used across the statistical tests; fixed so every expected
// value in the suite refers to one concrete scenario.
inline constexpr std::uint64_t kScenarioSeed = 95;
inline constexpr std::uint64_t kGeometryStream = 0xffffffffffff0001ULL;
inline constexpr std::uint64_t kKeyStream = 0xffffffffffff0002ULL;

inline channel::GeometryScenario default_geometry(const SystemConfig& cfg,
                                                  std::uint64_t seed = kScenarioSeed) {
    Rng rng(seed, kGeometryStream);
    return channel::draw_geometry(cfg, rng);
}

// Kolmogorov-Smirnov test of a sample against a continuous CDF. Returns the
// asymptotic p-value of sqrt(n) * D.
inline double ks_test_pvalue(std::vector<double> sample,
                             const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - i / n));
        d = std::max(d, std::abs((i + 1) / n - f));
    }
    const double t = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    double p = 0.0;
    for (int k = 1; k <= 100; ++k) {
        p += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * t * t);
    }
    return std::clamp(p, 0.0, 1.0);
}

inline double normal_cdf(double x, double mean, double sd) {
    return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

// Binomial std error of a proportion.
inline double proportion_stderr(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace tbesim::test

#endif
