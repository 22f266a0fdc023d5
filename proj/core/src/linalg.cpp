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

#include "uhlmann/linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <atomic>
#include <cmath>

#include "uhlmann/error.hpp"

namespace uhlmann {

namespace {

std::atomic<double> g_rank_tol{kDefaultRankTol};

void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::kDimensionMismatch, std::string(what) + " requires a square matrix");
    }
}

}  // namespace

double rank_tol() {
    return g_rank_tol.load(std::memory_order_relaxed);
}

void set_rank_tol(double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw Error(ErrorCode::kBadParams, "rank tolerance must be positive and finite");
    }
    g_rank_tol.store(tol, std::memory_order_relaxed);
}

double rank_threshold(double largest, double tol) {
    return tol * std::max(largest, 1.0);
}

HermitianEigen eig_hermitian(const ComplexMatrix &m) {
    require_square(m, "eig_hermitian");
    double norm = m.norm();
    double asym = (m - m.adjoint()).norm();
    if (asym > 1e-8 * norm) {
        throw Error(ErrorCode::kNotHermitian,
                    "||M - M^dagger||_F = " + std::to_string(asym) + " exceeds 1e-8 ||M||_F");
    }
    ComplexMatrix h = hermitian_part(m);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::kNoConvergence, "Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

SingularValueDecomposition svd(const ComplexMatrix &m, double tol) {
    Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SingularValueDecomposition out;
    out.u = solver.matrixU();
    out.v = solver.matrixV();
    out.singular_values = solver.singularValues();
    double largest = out.singular_values.size() > 0 ? out.singular_values(0) : 0.0;
    double cut = rank_threshold(largest, tol);
    out.rank = 0;
    for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
        if (out.singular_values(i) > cut) {
            ++out.rank;
        }
    }
    return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix &m, double tol) {
    HermitianEigen eig = eig_hermitian(m);
    const RealVector &lambda = eig.eigenvalues;
    if (lambda.size() == 0) {
        return m;
    }
    double scale = std::max(std::abs(lambda(0)), std::abs(lambda(lambda.size() - 1)));
    if (lambda(0) < -1e-10 * scale) {
        throw Error(ErrorCode::kNotPsd, "eigenvalue " + std::to_string(lambda(0)) + " below -1e-10 ||M||_2");
    }
    double cut = rank_threshold(scale, tol);
    RealVector root(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        root(i) = lambda(i) > cut ? std::sqrt(lambda(i)) : 0.0;
    }
    ComplexMatrix out = eig.eigenvectors * root.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
    return hermitian_part(out);
}

ComplexMatrix mp_pinv(const ComplexMatrix &m, double tol) {
    SingularValueDecomposition d = svd(m, tol);
    ComplexMatrix out = ComplexMatrix::Zero(m.cols(), m.rows());
    for (int i = 0; i < d.rank; ++i) {
        out += d.v.col(i) * (1.0 / d.singular_values(i)) * d.u.col(i).adjoint();
    }
    return out;
}

ComplexMatrix range_projector(const ComplexMatrix &m, double tol) {
    SingularValueDecomposition d = svd(m, tol);
    ComplexMatrix u = d.u.leftCols(d.rank);
    return hermitian_part(u * u.adjoint());
}

int numerical_rank(const ComplexMatrix &m, double tol) {
    return svd(m, tol).rank;
}

PolarFactors polar_left(const ComplexMatrix &a, double tol) {
    require_square(a, "polar_left");
    SingularValueDecomposition d = svd(a, tol);
    const Eigen::Index n = a.rows();
    RealVector kept = RealVector::Zero(n);
    kept.head(d.rank) = d.singular_values.head(d.rank);
    PolarFactors out;
    out.positive_part = hermitian_part(d.u * kept.cast<Complex>().asDiagonal() * d.u.adjoint());
    out.isometry_part = d.u.leftCols(d.rank) * d.v.leftCols(d.rank).adjoint();
    out.is_full_rank = d.rank == n;
    return out;
}

ComplexMatrix complete_to_unitary(const ComplexMatrix &v, double tol) {
    require_square(v, "complete_to_unitary");
    if (!is_partial_isometry(v, tol)) {
        throw Error(ErrorCode::kNotPartialIsometry, "V^dagger V is not a projector");
    }
    HermitianEigen initial = eig_hermitian(v.adjoint() * v);
    HermitianEigen final_space = eig_hermitian(v * v.adjoint());
    const Eigen::Index n = v.rows();
    // Eigenvalues are ascending; those near 0 span the complements.
    Eigen::Index kernel = 0;
    while (kernel < n && initial.eigenvalues(kernel) < 0.5) {
        ++kernel;
    }
    Eigen::Index cokernel = 0;
    while (cokernel < n && final_space.eigenvalues(cokernel) < 0.5) {
        ++cokernel;
    }
    if (kernel != cokernel) {
        throw Error(ErrorCode::kNotPartialIsometry, "initial and final spaces differ in dimension");
    }
    ComplexMatrix x0 = initial.eigenvectors.leftCols(kernel);
    ComplexMatrix y0 = final_space.eigenvectors.leftCols(kernel);
    ComplexMatrix x1 = initial.eigenvectors.rightCols(n - kernel);
    return v * x1 * x1.adjoint() + y0 * x0.adjoint();
}

bool is_partial_isometry(const ComplexMatrix &v, double tol) {
    if (v.rows() != v.cols()) {
        return false;
    }
    ComplexMatrix p = v.adjoint() * v;
    return (p * p - p).norm() <= tol;
}

bool projectors_equal(const ComplexMatrix &p, const ComplexMatrix &q, double tol) {
    if (p.rows() != q.rows() || p.cols() != q.cols()) {
        return false;
    }
    return (p - q).norm() <= tol;
}

bool is_unitary(const ComplexMatrix &u, double tol) {
    if (u.rows() != u.cols()) {
        return false;
    }
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm() <= tol;
}

double spectral_norm(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<ComplexMatrix> solver(m);
    return solver.singularValues()(0);
}

double nuclear_norm(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<ComplexMatrix> solver(m);
    return solver.singularValues().sum();
}

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a - b).norm();
}

ComplexMatrix hermitian_part(const ComplexMatrix &m) {
    return 0.5 * (m + m.adjoint());
}

ComplexMatrix skew_hermitian_part(const ComplexMatrix &m) {
    return 0.5 * (m - m.adjoint());
}

ComplexMatrix expm_skew_hermitian(const ComplexMatrix &omega) {
    // omega = -i H with H = i omega Hermitian, so exp(omega) = Q exp(-i Lambda) Q^dagger.
    ComplexMatrix h = hermitian_part(Complex(0.0, 1.0) * omega);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::kNoConvergence, "eigensolver failed in expm_skew_hermitian");
    }
    const RealVector &lambda = solver.eigenvalues();
    ComplexVector phases(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        phases(i) = std::polar(1.0, -lambda(i));
    }
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double re_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    // Re Tr(a b^dagger) = Re sum_ij a_ij conj(b_ij)
    return (a.array() * b.conjugate().array()).sum().real();
}

}  // namespace uhlmann
