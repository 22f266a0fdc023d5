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

#include "uhlmann/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uhlmann/error.hpp"

namespace uhlmann {

namespace {

bool all_finite(const ComplexMatrix &m) {
    return m.array().real().allFinite() && m.array().imag().allFinite();
}

void require_psd(const ComplexMatrix &m, double tol, const char *what) {
    if ((m - m.adjoint()).norm() > tol) {
        throw Error(ErrorCode::kInvalidState, std::string(what) + " is not Hermitian");
    }
    if (m.rows() == 0) {
        return;
    }
    double lo = eig_hermitian(m).eigenvalues(0);
    if (lo < -tol) {
        throw Error(ErrorCode::kInvalidState, std::string(what) + " has eigenvalue " + std::to_string(lo));
    }
}

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorCode::kDimensionMismatch, "density matrix must be square and non-empty");
    }
    if (!all_finite(m)) {
        throw Error(ErrorCode::kInvalidState, "density matrix has non-finite entries");
    }
    double asym = (m - m.adjoint()).norm();
    if (asym > tol) {
        throw Error(ErrorCode::kNotHermitian, "||sigma - sigma^dagger||_F = " + std::to_string(asym));
    }
    mat_ = hermitian_part(m);
    double tr = mat_.trace().real();
    if (std::abs(tr - 1.0) > tol) {
        throw Error(ErrorCode::kInvalidState, "trace is " + std::to_string(tr) + ", expected 1");
    }
    spectral_ = eig_hermitian(mat_);
    const RealVector &lambda = spectral_.eigenvalues;
    if (lambda(0) < -tol) {
        throw Error(ErrorCode::kNotPsd, "eigenvalue " + std::to_string(lambda(0)) + " is negative");
    }
    const Eigen::Index n = lambda.size();
    double cut = rank_threshold(lambda(n - 1), rank_tol());
    RealVector root = RealVector::Zero(n);
    support_ = ComplexMatrix::Zero(n, n);
    rank_ = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lambda(i) > cut) {
            root(i) = std::sqrt(lambda(i));
            support_ += spectral_.eigenvectors.col(i) * spectral_.eigenvectors.col(i).adjoint();
            ++rank_;
        }
    }
    sqrt_ = hermitian_part(spectral_.eigenvectors * root.cast<Complex>().asDiagonal() *
                           spectral_.eigenvectors.adjoint());
    support_ = hermitian_part(support_);
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
    return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(n));
}

DensityMatrix DensityMatrix::pure(const ComplexVector &psi) {
    double norm = psi.norm();
    if (norm == 0.0) {
        throw Error(ErrorCode::kInvalidState, "pure state from the zero vector");
    }
    ComplexVector unit = psi / norm;
    return DensityMatrix(unit * unit.adjoint());
}

Subamplitude::Subamplitude(DensityMatrix sigma, ComplexMatrix vtilde)
    : sigma_(std::move(sigma)), vtilde_(std::move(vtilde)) {
    if (vtilde_.rows() != sigma_.dim() || vtilde_.cols() != sigma_.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "V~ must be N x N");
    }
    double top = spectral_norm(vtilde_);
    if (top > 1.0 + 1e-9) {
        throw Error(ErrorCode::kNotContraction, "largest singular value of V~ is " + std::to_string(top));
    }
}

bool Subamplitude::is_amplitude(double tol) const {
    ComplexMatrix w_ = w();
    return (w_ * w_.adjoint() - sigma_.matrix()).norm() <= tol;
}

ComplexMatrix assemble_blocks(const ComplexMatrix &a, const ComplexMatrix &b, const ComplexMatrix &c) {
    const Eigen::Index n = a.rows();
    ComplexMatrix f(2 * n, 2 * n);
    f.topLeftCorner(n, n) = a;
    f.topRightCorner(n, n) = c;
    f.bottomLeftCorner(n, n) = c.adjoint();
    f.bottomRightCorner(n, n) = b;
    return f;
}

ComplexMatrix BlockState::assembled() const {
    return assemble_blocks(b00, b11, b01);
}

double BlockState::trace() const {
    return b00.trace().real() + b11.trace().real();
}

BlockState BlockState::from_assembled(const ComplexMatrix &rho) {
    if (rho.rows() != rho.cols() || rho.rows() % 2 != 0) {
        throw Error(ErrorCode::kDimensionMismatch, "two-path state must be 2N x 2N");
    }
    const Eigen::Index n = rho.rows() / 2;
    BlockState out;
    out.n = static_cast<int>(n);
    out.b00 = rho.topLeftCorner(n, n);
    out.b01 = rho.topRightCorner(n, n);
    out.b11 = rho.bottomRightCorner(n, n);
    return out;
}

void validate_block_state(const BlockState &rho, double tol) {
    const Eigen::Index n = rho.n;
    if (rho.b00.rows() != n || rho.b00.cols() != n || rho.b01.rows() != n || rho.b01.cols() != n ||
        rho.b11.rows() != n || rho.b11.cols() != n) {
        throw Error(ErrorCode::kDimensionMismatch, "block shapes do not match n");
    }
    require_psd(rho.b00, tol, "b00");
    require_psd(rho.b11, tol, "b11");
    if (std::abs(rho.trace() - 1.0) > tol) {
        throw Error(ErrorCode::kInvalidState, "trace(b00) + trace(b11) = " + std::to_string(rho.trace()));
    }
}

double min_eigenvalue(const BlockState &rho) {
    return eig_hermitian(rho.assembled()).eigenvalues(0);
}

BlockState encode(const DensityMatrix &sigma, const ComplexMatrix &vtilde) {
    const int n = sigma.dim();
    if (vtilde.rows() != n || vtilde.cols() != n) {
        throw Error(ErrorCode::kDimensionMismatch, "V~ must match the dimension of sigma");
    }
    BlockState out;
    out.n = n;
    out.b00 = 0.5 * sigma.matrix();
    out.b11 = ComplexMatrix::Identity(n, n) / (2.0 * n);
    out.b01 = sigma.sqrt() * vtilde / (2.0 * std::sqrt(static_cast<double>(n)));
    return out;
}

BlockState encode(const DensityMatrix &sigma, const Subamplitude &sub) {
    if (sub.sigma().dim() != sigma.dim() ||
        (sub.sigma().matrix() - sigma.matrix()).norm() > 1e-12) {
        throw Error(ErrorCode::kDimensionMismatch, "subamplitude belongs to a different state");
    }
    return encode(sigma, sub.vtilde());
}

BlockState encode(const Subamplitude &sub) {
    return encode(sub.sigma(), sub.vtilde());
}

ComplexMatrix check_membership(const BlockState &rho, const DensityMatrix &sigma0, const DensityMatrix &sigma1,
                               double tol) {
    if (rho.n != sigma0.dim() || rho.n != sigma1.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "marginals and block state differ in dimension");
    }
    double d0 = (rho.b00 - 0.5 * sigma0.matrix()).norm();
    double d1 = (rho.b11 - 0.5 * sigma1.matrix()).norm();
    if (d0 > tol || d1 > tol) {
        throw Error(ErrorCode::kMarginalMismatch,
                    "marginal blocks deviate by " + std::to_string(std::max(d0, d1)));
    }
    const ComplexMatrix &c = rho.b01;
    ComplexMatrix vtilde = 2.0 * mp_pinv(sigma0.sqrt()) * c * mp_pinv(sigma1.sqrt());
    double top = spectral_norm(vtilde);
    if (top > 1.0 + tol) {
        throw Error(ErrorCode::kNotInQ, "canonical V~ has norm " + std::to_string(top) + " > 1");
    }
    ComplexMatrix rebuilt = 0.5 * sigma0.sqrt() * vtilde * sigma1.sqrt();
    double err = (rebuilt - c).norm();
    if (err > tol) {
        throw Error(ErrorCode::kNotInQ, "off-diagonal block leaves the marginal ranges (residual " +
                                            std::to_string(err) + ")");
    }
    return vtilde;
}

bool block_positivity(const ComplexMatrix &a, const ComplexMatrix &b, const ComplexMatrix &c, double tol) {
    ComplexMatrix pa = range_projector(a);
    ComplexMatrix pb = range_projector(b);
    if ((pa * c * pb - c).norm() > tol) {
        return false;
    }
    ComplexMatrix schur = a - c * mp_pinv(b) * c.adjoint();
    return eig_hermitian(hermitian_part(schur)).eigenvalues(0) >= -tol;
}

ComplexMatrix random_unitary(int n, Rng &rng) {
    ComplexMatrix g(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            g(i, j) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        Complex d = r(i, i);
        double mag = std::abs(d);
        q.col(i) *= mag > 0.0 ? d / mag : Complex(1.0);
    }
    return q;
}

ComplexMatrix random_unitary(int n, std::uint64_t seed) {
    Rng rng(seed);
    return random_unitary(n, rng);
}

namespace {

RealVector floored_dirichlet(int count, int n, Rng &rng) {
    RealVector d(count);
    for (int i = 0; i < count; ++i) {
        d(i) = -std::log(1.0 - rng.uniform());
    }
    d /= d.sum();
    double floor = 0.01 / n;
    return (1.0 - count * floor) * d.array() + floor;
}

}  // namespace

DensityMatrix random_density(int n, int rank, std::uint64_t seed) {
    if (n < 1 || rank < 1 || rank > n) {
        throw Error(ErrorCode::kBadRank, "need 1 <= rank <= n, got rank " + std::to_string(rank) + " for n " +
                                             std::to_string(n));
    }
    Rng rng(seed);
    ComplexMatrix u = random_unitary(n, rng);
    RealVector lambda = floored_dirichlet(rank, n, rng);
    ComplexMatrix basis = u.leftCols(rank);
    ComplexMatrix sigma = basis * lambda.cast<Complex>().asDiagonal() * basis.adjoint();
    return DensityMatrix(hermitian_part(sigma));
}

DensityMatrix random_density_on_support(const ComplexMatrix &basis, std::uint64_t seed) {
    const int n = static_cast<int>(basis.rows());
    const int r = static_cast<int>(basis.cols());
    if (r < 1 || r > n) {
        throw Error(ErrorCode::kBadRank, "support basis must be n x r with 1 <= r <= n");
    }
    Rng rng(seed);
    ComplexMatrix u = random_unitary(r, rng);
    RealVector lambda = floored_dirichlet(r, n, rng);
    ComplexMatrix local = u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
    return DensityMatrix(hermitian_part(basis * local * basis.adjoint()));
}

ComplexMatrix random_contraction(int n, std::uint64_t seed) {
    Rng rng(seed);
    ComplexMatrix u = random_unitary(n, rng);
    ComplexMatrix x = random_unitary(n, rng);
    RealVector s(n);
    for (int i = 0; i < n; ++i) {
        s(i) = rng.uniform();
    }
    return u * s.cast<Complex>().asDiagonal() * x.adjoint();
}

ComplexVector random_unit_vector(int n, Rng &rng) {
    ComplexVector v(n);
    for (int i = 0; i < n; ++i) {
        v(i) = rng.complex_normal();
    }
    return v / v.norm();
}

}  // namespace uhlmann
