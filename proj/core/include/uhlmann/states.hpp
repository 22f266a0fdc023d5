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

#ifndef UHLMANN_STATES_HPP
#define UHLMANN_STATES_HPP

#include <cstdint>

#include "uhlmann/linalg.hpp"
#include "uhlmann/random.hpp"

namespace uhlmann {

/// Positive semidefinite, unit-trace operator on the N-dimensional internal
/// space, with its spectrum, square root and support projector cached at
/// construction.
class DensityMatrix {
   public:
    /// Validates Hermiticity, positivity and unit trace, each to `tol`.
    explicit DensityMatrix(const ComplexMatrix &m, double tol = 1e-10);

    static DensityMatrix maximally_mixed(int n);
    static DensityMatrix pure(const ComplexVector &psi);

    int dim() const {
        return static_cast<int>(mat_.rows());
    }
    const ComplexMatrix &matrix() const {
        return mat_;
    }
    const HermitianEigen &spectral() const {
        return spectral_;
    }
    const ComplexMatrix &sqrt() const {
        return sqrt_;
    }
    const ComplexMatrix &support_projector() const {
        return support_;
    }
    int rank() const {
        return rank_;
    }
    bool is_faithful() const {
        return rank_ == dim();
    }

   private:
    ComplexMatrix mat_;
    HermitianEigen spectral_;
    ComplexMatrix sqrt_;
    ComplexMatrix support_;
    int rank_ = 0;
};

/// W~ = sqrt(sigma) V~ with V~ V~^dagger <= 1.
class Subamplitude {
   public:
    Subamplitude(DensityMatrix sigma, ComplexMatrix vtilde);

    const DensityMatrix &sigma() const {
        return sigma_;
    }
    const ComplexMatrix &vtilde() const {
        return vtilde_;
    }
    ComplexMatrix w() const {
        return sigma_.sqrt() * vtilde_;
    }
    /// True when w w^dagger = sigma, i.e. the subamplitude is a full amplitude.
    bool is_amplitude(double tol = 1e-9) const;

   private:
    DensityMatrix sigma_;
    ComplexMatrix vtilde_;
};

/// Two-path state on H_I (x) H_s stored as N x N blocks b_xy = <x|rho|y>.
/// The assembled 2N x 2N matrix uses the path index as the slow index.
struct BlockState {
    int n = 0;
    ComplexMatrix b00;
    ComplexMatrix b01;
    ComplexMatrix b11;

    ComplexMatrix b10() const {
        return b01.adjoint();
    }
    ComplexMatrix assembled() const;
    double trace() const;

    static BlockState from_assembled(const ComplexMatrix &rho);
};

/// Throws InvalidState unless b00, b11 are PSD, b00/b11 Hermitian and the
/// total trace is 1 (all to tol). Positivity of the assembled matrix is a
/// separate question: see block_positivity and min_eigenvalue.
void validate_block_state(const BlockState &rho, double tol = 1e-10);
double min_eigenvalue(const BlockState &rho);

/// D(sigma, sqrt(sigma) V~): blocks sigma/2, 1/(2N) and sqrt(sigma) V~ / (2 sqrt N).
BlockState encode(const DensityMatrix &sigma, const ComplexMatrix &vtilde);
BlockState encode(const DensityMatrix &sigma, const Subamplitude &sub);
BlockState encode(const Subamplitude &sub);

/// Membership in Q(sigma0, sigma1). Returns the canonical
/// V~ = 2 sqrt(sigma0)^+ C sqrt(sigma1)^+ after checking the marginals
/// (MarginalMismatch), V~ V~^dagger <= 1 and the reconstruction of C (NotInQ).
ComplexMatrix check_membership(const BlockState &rho, const DensityMatrix &sigma0, const DensityMatrix &sigma1,
                               double tol = 1e-9);

/// [[A, C], [C^dagger, B]] >= 0 via P_R(A) C P_R(B) = C and A >= C B^+ C^dagger.
bool block_positivity(const ComplexMatrix &a, const ComplexMatrix &b, const ComplexMatrix &c, double tol = 1e-9);

ComplexMatrix assemble_blocks(const ComplexMatrix &a, const ComplexMatrix &b, const ComplexMatrix &c);

// Random objects. All are reproducible from the seed (see Rng).

/// Haar unitary: QR of a complex Ginibre matrix with the diagonal phases of R removed.
ComplexMatrix random_unitary(int n, Rng &rng);
ComplexMatrix random_unitary(int n, std::uint64_t seed);

/// Rank-`rank` state with Haar eigenbasis and flat-Dirichlet spectrum, floored
/// so that every kept eigenvalue is at least 0.01 / n.
DensityMatrix random_density(int n, int rank, std::uint64_t seed);

/// Full-rank state on the column span of `basis` (an n x r isometry).
DensityMatrix random_density_on_support(const ComplexMatrix &basis, std::uint64_t seed);

/// Contraction U diag(s) X^dagger with Haar U, X and s uniform on [0, 1].
ComplexMatrix random_contraction(int n, std::uint64_t seed);

ComplexVector random_unit_vector(int n, Rng &rng);

}  // namespace uhlmann

#endif
