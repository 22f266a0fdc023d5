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

#ifndef UHLMANN_LINALG_HPP
#define UHLMANN_LINALG_HPP

#include <Eigen/Dense>
#include <complex>

namespace uhlmann {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Singular values (or eigenvalues) at or below kDefaultRankTol * max(largest, 1)
/// count as zero everywhere rank matters.
inline constexpr double kDefaultRankTol = 1e-9;

/// Process-wide rank tolerance. Defaults to kDefaultRankTol; the CLI sets it
/// once at startup from HOLONOMY_RANK_TOL. Every rank-sensitive function also
/// takes the tolerance as an explicit argument.
double rank_tol();
void set_rank_tol(double tol);

/// Absolute cut-off for a spectrum whose largest magnitude is `largest`.
double rank_threshold(double largest, double tol);

struct HermitianEigen {
    RealVector eigenvalues;      // ascending
    ComplexMatrix eigenvectors;  // columns, unitary
};

struct SingularValueDecomposition {
    ComplexMatrix u;             // left singular vectors (full, unitary)
    RealVector singular_values;  // descending
    ComplexMatrix v;             // right singular vectors (full, unitary)
    int rank = 0;                // count above the rank threshold
};

struct PolarFactors {
    ComplexMatrix positive_part;  // sqrt(A A^dagger)
    ComplexMatrix isometry_part;  // partial isometry R(A^dagger) -> R(A)
    bool is_full_rank = false;
};

HermitianEigen eig_hermitian(const ComplexMatrix &m);
SingularValueDecomposition svd(const ComplexMatrix &m, double tol = rank_tol());

ComplexMatrix sqrt_psd(const ComplexMatrix &m, double tol = rank_tol());
ComplexMatrix mp_pinv(const ComplexMatrix &m, double tol = rank_tol());
ComplexMatrix range_projector(const ComplexMatrix &m, double tol = rank_tol());
int numerical_rank(const ComplexMatrix &m, double tol = rank_tol());

/// A = positive_part * isometry_part, with the isometry fixed canonically as
/// sum_{s_i > tol} u_i v_i^dagger when A is rank deficient.
PolarFactors polar_left(const ComplexMatrix &a, double tol = rank_tol());

/// Unitary U with U (V^dagger V) = V. The completion maps the kernel of V onto
/// the orthogonal complement of its range; it is not unique.
ComplexMatrix complete_to_unitary(const ComplexMatrix &v, double tol = 1e-8);

bool is_partial_isometry(const ComplexMatrix &v, double tol = 1e-8);
bool projectors_equal(const ComplexMatrix &p, const ComplexMatrix &q, double tol = 1e-8);
bool is_unitary(const ComplexMatrix &u, double tol = 1e-8);

double spectral_norm(const ComplexMatrix &m);
double nuclear_norm(const ComplexMatrix &m);
double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b);

ComplexMatrix hermitian_part(const ComplexMatrix &m);
ComplexMatrix skew_hermitian_part(const ComplexMatrix &m);

/// exp(omega) for skew-Hermitian omega, via the spectrum of i*omega.
ComplexMatrix expm_skew_hermitian(const ComplexMatrix &omega);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Re Tr(a b^dagger), the real Hilbert-Schmidt inner product.
double re_inner(const ComplexMatrix &a, const ComplexMatrix &b);

}  // namespace uhlmann

#endif
