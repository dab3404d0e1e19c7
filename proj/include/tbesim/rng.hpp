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

#ifndef TBESIM_RNG_HPP
#define TBESIM_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace tbesim {

// SplitMix64 finalizer, used to derive independent per-block seeds from a
// master seed. Identical (master, index) pairs give identical streams no
// matter how blocks are distributed over threads.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// One seeded random stream. All randomness in the simulator flows through
// this wrapper so that nothing touches a global generator.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    Rng(std::uint64_t master_seed, std::uint64_t stream_index)
        : engine_(splitmix64(master_seed ^ splitmix64(stream_index + 1))) {}

    double normal(double stddev = 1.0) { return stddev * normal_(engine_); }

    // Zero-mean circularly symmetric complex Gaussian with E{|z|^2} = var.
    std::complex<double> cnormal(double var = 1.0) {
        const double s = std::sqrt(var / 2.0);
        return {s * normal_(engine_), s * normal_(engine_)};
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    std::uint64_t bits64() { return engine_(); }

    bool bit() { return (engine_() >> 63) != 0; }

    std::uint32_t index(std::uint32_t n) {
        return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace tbesim

#endif
