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

#include "uhlmann/interferometry.hpp"
#include "uhlmann/preparation.hpp"

namespace {

struct EncodedPair {
    uhlmann::BlockState a;
    uhlmann::BlockState b;
};

EncodedPair make_pair(int n) {
    return {uhlmann::encode(uhlmann::random_density(n, n, 1), uhlmann::random_unitary(n, 2)),
            uhlmann::encode(uhlmann::random_density(n, n, 3), uhlmann::random_unitary(n, 4))};
}

// Permutation contraction of Tr Z (rho_b (x) rho_a), Z built once.
void BM_ParallelityPermutation(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    EncodedPair p = make_pair(n);
    uhlmann::ZOperator z = uhlmann::build_z(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhlmann::parallelity_e(z, p.b, p.a));
    }
}
BENCHMARK(BM_ParallelityPermutation)->DenseRange(2, 8, 2);

void BM_ParallelityBlocks(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    EncodedPair p = make_pair(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhlmann::parallelity_e_blocks(p.b, p.a));
    }
}
BENCHMARK(BM_ParallelityBlocks)->DenseRange(2, 8, 2);

// Dense simulation of the controlled-Z interferometer.
void BM_ParallelityCircuit(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    EncodedPair p = make_pair(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhlmann::parallelity_circuit(p.b, p.a));
    }
}
BENCHMARK(BM_ParallelityCircuit)->DenseRange(2, 8, 2);

void BM_ProbeProbability(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    EncodedPair p = make_pair(n);
    uhlmann::ComplexMatrix u = uhlmann::random_unitary(n, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhlmann::probe_probability(p.a, u));
    }
}
BENCHMARK(BM_ProbeProbability)->DenseRange(2, 8, 2);

void BM_BuildAndExecutePlan(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    uhlmann::DensityMatrix sigma = uhlmann::random_density(n, n, 6);
    uhlmann::ComplexMatrix v = uhlmann::random_contraction(n, 7);
    for (auto _ : state) {
        uhlmann::PreparationPlan plan = uhlmann::build_plan(sigma, v);
        benchmark::DoNotOptimize(uhlmann::execute_plan(plan));
    }
}
BENCHMARK(BM_BuildAndExecutePlan)->DenseRange(2, 8, 2);

}  // namespace
