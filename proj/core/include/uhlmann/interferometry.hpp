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

#ifndef UHLMANN_INTERFEROMETRY_HPP
#define UHLMANN_INTERFEROMETRY_HPP

#include <cstdint>
#include <vector>

#include "uhlmann/linalg.hpp"
#include "uhlmann/random.hpp"
#include "uhlmann/states.hpp"

namespace uhlmann {

/// Hermitian permutation on H (x) H that exchanges the two copies on the
/// mixed-path sectors P0 (x) P1 and P1 (x) P0 and acts as the identity on
/// P0 (x) P0 and P1 (x) P1. Index of |chi_k, x> in H is x * N + k; the first
/// copy is the slow index of H (x) H.
struct ZOperator {
    int n = 0;
    std::vector<int> permutation;  // Z e_j = e_{permutation[j]}
    ComplexMatrix matrix;
};

ZOperator build_z(int n);

/// E = Tr(Z rho_b (x) rho_a), contracted entry by entry along Z's permutation.
double parallelity_e(const BlockState &rho_b, const BlockState &rho_a);
double parallelity_e(const ZOperator &z, const BlockState &rho_b, const BlockState &rho_a);

/// The same quantity from the blocks alone:
/// Tr b00 Tr a00 + Tr b11 Tr a11 + 2 Re Tr(b10 a01).
double parallelity_e_blocks(const BlockState &rho_b, const BlockState &rho_a);

/// Detection probability of the ancilla-controlled Z test, simulated as exact
/// density-matrix evolution on H_e (x) H (x) H: Hadamard on e, Z applied when
/// e = 0, Hadamard on e, project e on |0_e>.
double parallelity_circuit(const BlockState &rho_b, const BlockState &rho_a);

struct ProbeResult {
    double probability = 0.0;          // simulated circuit
    double formula_probability = 0.0;  // 1/2 + Re Tr(W U^dagger) / (2 sqrt N)
    ComplexMatrix trial_unitary;
};

/// Applies 1 (+) U on the two paths, a Hadamard on the path qubit, and returns
/// the probability of path 0.
ProbeResult probe_probability(const BlockState &rho, const ComplexMatrix &u);

/// (1 (+) U) rho (1 (+) U)^dagger. Maps b01 -> b01 U^dagger and b11 -> U b11 U^dagger.
BlockState apply_path_unitary(const BlockState &rho, const ComplexMatrix &u);

struct ReadoutResult {
    ComplexMatrix unitary;     // support * U*, the uniquely determined part
    ComplexMatrix completion;  // one unitary maximizer (non-canonical off support)
    double max_probability = 0.0;
    bool verified = false;  // no probed perturbation beat max_probability
};

/// Unitary maximizing the probe probability, restricted to `support`. The
/// maximizer is the isometric polar factor of b01; random perturbations of the
/// completion are then probed to confirm none does better.
ReadoutResult readout_unitary(const BlockState &rho, const ComplexMatrix &support, int probes = 16,
                              std::uint64_t seed = 0x5EED);

/// Post-selects with P (x) |0><0| + 1 (x) |1><1| and renormalizes.
BlockState filter_state(const BlockState &rho, const ComplexMatrix &projector);

/// Number of path-0 detections in `shots` Bernoulli trials at probability p.
int sample_detections(double p, int shots, Rng &rng);

}  // namespace uhlmann

#endif
