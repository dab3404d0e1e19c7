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
//
// Serial reference vs OpenMP Monte Carlo runner, with and without AN.

#include <benchmark/benchmark.h>

#include "tbesim/simkit.hpp"

namespace {

using namespace tbesim;

struct Fixture {
    SystemConfig cfg;
    channel::GeometryScenario geom;
    tbe::KeyMaterial key;

    Fixture() {
        Rng geo(95, 0xffffffffffff0001ULL);
        geom = channel::draw_geometry(cfg, geo);
        Rng key_rng(95, 0xffffffffffff0002ULL);
        key = tbe::KeyMaterial::random(cfg.key_bits, key_rng);
    }
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

void bm_blocks_serial(benchmark::State& state, double phi) {
    const auto& f = fixture();
    const PowerAllocation p{0.95, phi};
    const std::uint64_t n = state.range(0);
    for (auto _ : state) {
        auto rep = simkit::run_montecarlo_serial(f.cfg, f.geom, f.key, p, n, 1);
        benchmark::DoNotOptimize(rep.counts.user_msg_errors);
    }
    state.SetItemsProcessed(state.iterations() * n);
}

void bm_blocks_openmp(benchmark::State& state, double phi) {
    const auto& f = fixture();
    const PowerAllocation p{0.95, phi};
    const std::uint64_t n = state.range(0);
    for (auto _ : state) {
        auto rep = simkit::run_montecarlo(f.cfg, f.geom, f.key, p, n, 1);
        benchmark::DoNotOptimize(rep.counts.user_msg_errors);
    }
    state.SetItemsProcessed(state.iterations() * n);
}

void bm_theory_eval(benchmark::State& state) {
    const auto& f = fixture();
    double acc = 0.0;
    for (auto _ : state) {
        acc += theory::evaluate_scenario(f.cfg, f.geom, {0.95, 0.9}).rates.r_sec;
        benchmark::DoNotOptimize(acc);
    }
}

}  // namespace

BENCHMARK_CAPTURE(bm_blocks_serial, no_an, 1.0)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_blocks_serial, with_an, 0.8)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_blocks_openmp, no_an, 1.0)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_blocks_openmp, with_an, 0.8)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_theory_eval);

BENCHMARK_MAIN();
