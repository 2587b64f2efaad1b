// Copyright 2026 The fusionsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "fusionsim/growth.hpp"
#include "fusionsim/oracle.hpp"

namespace {

using namespace fusionsim;

void detection(benchmark::State &state, Execution execution) {
    const int bins = static_cast<int>(state.range(0));
    const auto a = gaussian_packet(0.0, 1.0, 0.0);
    const auto b = gaussian_packet(0.0, 1.0, 1.0);
    const auto grid = oracle::oracle_grid(a, b, bins);
    const auto det = DetectorModel::finite(0.05, 3.0);
    const auto input = oracle::apply_pbs(
        oracle::build_input(ParityInput::plus_plus(), a, b, grid, oracle::Prerotation::identity()));
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::apply_detection(input, det, det, execution));
    }
}

void growth(benchmark::State &state, Execution execution) {
    GrowthConfig config;
    config.target = 200;
    config.trials = static_cast<int>(state.range(0));
    config.noise.tau = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_growth(config, execution));
    }
}

} // namespace

BENCHMARK_CAPTURE(detection, serial, Execution::Serial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(detection, parallel, Execution::Parallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(growth, serial, Execution::Serial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(growth, parallel, Execution::Parallel)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
