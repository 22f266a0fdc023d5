// Copyright 2026 The Uhlmann Holonomy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "uhlmann/transport.hpp"

namespace {

uhlmann::SequenceSpec sequence(int n, int k) {
    std::vector<uhlmann::DensityMatrix> s;
    for (int j = 0; j < k; ++j) {
        s.push_back(uhlmann::random_density(n, n, uhlmann::derive_seed(11, j)));
    }
    return uhlmann::SequenceSpec::make(std::move(s));
}

void BM_AnalyticHolonomy(benchmark::State &state) {
    uhlmann::SequenceSpec seq = sequence(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhlmann::analytic_holonomy(seq));
    }
}
BENCHMARK(BM_AnalyticHolonomy)->DenseRange(2, 4);

void BM_OperationalClosed(benchmark::State &state) {
    uhlmann::SequenceSpec seq = sequence(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            uhlmann::operational_holonomy(seq, std::nullopt, uhlmann::HolonomyMethod::kOperationalClosed));
    }
}
BENCHMARK(BM_OperationalClosed)->DenseRange(2, 4);

void BM_OperationalAscent(benchmark::State &state) {
    uhlmann::SequenceSpec seq = sequence(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            uhlmann::operational_holonomy(seq, std::nullopt, uhlmann::HolonomyMethod::kOperationalAscent));
    }
}
BENCHMARK(BM_OperationalAscent)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State &state) {
    uhlmann::SequenceSpec seq = sequence(3, 6);
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            uhlmann::verify(seq, uhlmann::HolonomyMethod::kOperationalAscent, 8, 1, {}, threads));
    }
}
BENCHMARK(BM_Verify)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
