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

#ifndef UHLMANN_RANDOM_HPP
#define UHLMANN_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace uhlmann {

/// Seeded generator used for every random object in the library.
///
/// The stream is fully specified so generated corpora are reproducible across
/// platforms and standard libraries: raw words come from std::mt19937_64
/// (whose output sequence is fixed by the standard), uniforms are the top 53
/// bits scaled by 2^-53, and normals use the Box-Muller transform with both
/// outputs consumed in order. The standard distribution classes are avoided
/// on purpose because their algorithms are implementation-defined.
class Rng {
   public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double uniform();
    /// Standard normal.
    double normal();
    /// Complex normal with E|z|^2 = 1.
    std::complex<double> complex_normal();

   private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 mixing of (master, index); used to derive independent child seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace uhlmann

#endif
