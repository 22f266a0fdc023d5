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

#ifndef UHLMANN_PREPARATION_HPP
#define UHLMANN_PREPARATION_HPP

#include <vector>

#include "uhlmann/linalg.hpp"
#include "uhlmann/states.hpp"

namespace uhlmann {

struct BranchUnitaries {
    ComplexMatrix path0;  // U_j^(0)
    ComplexMatrix path1;  // U_j^(1)
};

struct MixtureTerm {
    double weight = 0.0;
    ComplexMatrix unitary;
};

/// Recipe for preparing D(sigma, sqrt(sigma) V~) from the reference state
/// |eta>|0>: a 50/50 beam splitter, branch j's pair of path unitaries chosen
/// with probability 1/N from a shared random source, then a final gate on
/// path 1 drawn from `final_mixture`.
///
/// `final_mixture` decomposes the target, sum_n weight_n unitary_n = V~.
/// The gate executed on path 1 for term n is unitary_n^dagger, since
/// (1 (+) G) maps the off-diagonal block b01 to b01 G^dagger.
struct PreparationPlan {
    int branch_count = 0;
    std::vector<BranchUnitaries> branch_unitaries;
    std::vector<double> probabilities;
    ComplexVector reference_state;
    std::vector<MixtureTerm> final_mixture;
    std::vector<ComplexVector> branch_states;  // |eta_j> on H, for inspection
};

/// |psi_k> = sqrt(lambda_k / 2) |k>|0> + |k>|1> / sqrt(2N), one per eigenpair.
std::vector<ComplexVector> branch_vectors(const DensityMatrix &sigma);

/// Unitary with sum_k |U_jk|^2 lambda_k = 1/N for every row j. The discrete
/// Fourier matrix has uniform moduli, so it works for any probability vector.
ComplexMatrix horn_unitary(const RealVector &eigenvalues);

/// V~ = (V_+ + V_-) / 2 with V_+- = U diag(s +- i sqrt(1 - s^2)) X^dagger from the
/// SVD V~ = U diag(s) X^dagger. A unitary input gives the single term (1, V~).
std::vector<MixtureTerm> contraction_to_unitaries(const ComplexMatrix &vtilde);

/// Unitary sending the first standard basis vector to `target` (a unit
/// vector): a phase times a Householder reflection, identity when target = e_0.
ComplexMatrix unitary_from_reference(const ComplexVector &target);

PreparationPlan build_plan(const DensityMatrix &sigma, const ComplexMatrix &vtilde);

/// Runs the plan as matrix algebra and returns the prepared two-path state.
BlockState execute_plan(const PreparationPlan &plan);

}  // namespace uhlmann

#endif
