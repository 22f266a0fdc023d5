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

#include "uhlmann/linalg.hpp"
#include "uhlmann/states.hpp"

namespace {

uhlmann::ComplexMatrix ginibre(int n, std::uint64_t seed) {
    uhlmann::Rng rng(seed);
    uhlmann::ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = rng.complex_normal();
        }
    }
    return m;
}

void BM_EigHermitian(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    uhlmann::ComplexMatrix g = ginibre(n, 1);
    uhlmann::ComplexMatrix h = g + g.adjoint();
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhlmann::eig_hermitian(h));
    }
}
BENCHMARK(BM_EigHermitian)->RangeMultiplier(2)->Range(2, 16);

void BM_Svd(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    uhlmann::ComplexMatrix a = ginibre(n, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhlmann::svd(a));
    }
}
BENCHMARK(BM_Svd)->RangeMultiplier(2)->Range(2, 16);

void BM_PolarLeft(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    uhlmann::ComplexMatrix a = ginibre(n, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhlmann::polar_left(a));
    }
}
BENCHMARK(BM_PolarLeft)->RangeMultiplier(2)->Range(2, 16);

void BM_SqrtPsd(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    uhlmann::ComplexMatrix g = ginibre(n, 4);
    uhlmann::ComplexMatrix p = g * g.adjoint();
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhlmann::sqrt_psd(p));
    }
}
BENCHMARK(BM_SqrtPsd)->RangeMultiplier(2)->Range(2, 16);

void BM_DensityMatrix(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    uhlmann::ComplexMatrix m = uhlmann::random_density(n, n, 5).matrix();
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhlmann::DensityMatrix(m));
    }
}
BENCHMARK(BM_DensityMatrix)->RangeMultiplier(2)->Range(2, 16);

}  // namespace
