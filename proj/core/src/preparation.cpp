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

#include "uhlmann/preparation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uhlmann/error.hpp"

namespace uhlmann {

std::vector<ComplexVector> branch_vectors(const DensityMatrix &sigma) {
    const int n = sigma.dim();
    const HermitianEigen &eig = sigma.spectral();
    // Same cut as sigma.sqrt(): a roundoff eigenvalue of 1e-17 would otherwise
    // contribute sqrt(1e-17) to the path-0 amplitude.
    const double cut = rank_threshold(eig.eigenvalues(n - 1), rank_tol());
    std::vector<ComplexVector> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        double lambda = eig.eigenvalues(k) > cut ? eig.eigenvalues(k) : 0.0;
        ComplexVector psi(2 * n);
        psi.head(n) = std::sqrt(lambda / 2.0) * eig.eigenvectors.col(k);
        psi.tail(n) = eig.eigenvectors.col(k) / std::sqrt(2.0 * n);
        out.push_back(std::move(psi));
    }
    return out;
}

ComplexMatrix horn_unitary(const RealVector &eigenvalues) {
    const Eigen::Index n = eigenvalues.size();
    if (n < 1 || (eigenvalues.array() < -1e-10).any() || std::abs(eigenvalues.sum() - 1.0) > 1e-8) {
        throw Error(ErrorCode::kBadParams, "horn_unitary expects a probability vector");
    }
    ComplexMatrix f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            // (j * k) mod n keeps the angle small and exact for large products.
            double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
            f(j, k) = std::polar(scale, angle);
        }
    }
    return f;
}

std::vector<MixtureTerm> contraction_to_unitaries(const ComplexMatrix &vtilde) {
    if (vtilde.rows() != vtilde.cols()) {
        throw Error(ErrorCode::kDimensionMismatch, "V~ must be square");
    }
    if (is_unitary(vtilde, 1e-10)) {
        return {{1.0, vtilde}};
    }
    SingularValueDecomposition d = svd(vtilde);
    const Eigen::Index n = vtilde.rows();
    if (d.singular_values(0) > 1.0 + 1e-9) {
        throw Error(ErrorCode::kNotContraction,
                    "largest singular value " + std::to_string(d.singular_values(0)) + " exceeds 1");
    }
    ComplexVector plus(n);
    ComplexVector minus(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = std::min(d.singular_values(i), 1.0);
        double c = std::sqrt(std::max(0.0, 1.0 - s * s));
        plus(i) = Complex(s, c);
        minus(i) = Complex(s, -c);
    }
    return {{0.5, d.u * plus.asDiagonal() * d.v.adjoint()}, {0.5, d.u * minus.asDiagonal() * d.v.adjoint()}};
}

ComplexMatrix unitary_from_reference(const ComplexVector &target) {
    const Eigen::Index n = target.size();
    Complex first = target(0);
    Complex phase = std::abs(first) > 0.0 ? first / std::abs(first) : Complex(1.0);
    // Reflection across (t - phase e0) sends t to phase e0, hence e0 to conj(phase) t.
    ComplexVector w = target;
    w(0) -= phase;
    double ww = w.squaredNorm();
    ComplexMatrix reflect = ComplexMatrix::Identity(n, n);
    if (ww > 1e-28) {
        reflect -= (2.0 / ww) * w * w.adjoint();
    }
    return phase * reflect;
}

PreparationPlan build_plan(const DensityMatrix &sigma, const ComplexMatrix &vtilde) {
    const int n = sigma.dim();
    if (vtilde.rows() != n || vtilde.cols() != n) {
        throw Error(ErrorCode::kDimensionMismatch, "V~ must match the dimension of sigma");
    }
    PreparationPlan plan;
    plan.final_mixture = contraction_to_unitaries(vtilde);
    plan.branch_count = n;
    plan.reference_state = ComplexVector::Zero(n);
    plan.reference_state(0) = 1.0;

    RealVector lambda = sigma.spectral().eigenvalues.cwiseMax(0.0);
    lambda /= lambda.sum();
    ComplexMatrix horn = horn_unitary(lambda);
    std::vector<ComplexVector> psi = branch_vectors(sigma);

    const double root_n = std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) {
        ComplexVector eta = ComplexVector::Zero(2 * n);
        for (int k = 0; k < n; ++k) {
            eta += root_n * horn(j, k) * psi[k];
        }
        ComplexVector eta0 = std::numbers::sqrt2 * eta.head(n);
        ComplexVector eta1 = std::numbers::sqrt2 * eta.tail(n);
        plan.branch_unitaries.push_back({unitary_from_reference(eta0 / eta0.norm()),
                                         unitary_from_reference(eta1 / eta1.norm())});
        plan.probabilities.push_back(1.0 / n);
        plan.branch_states.push_back(std::move(eta));
    }
    return plan;
}

BlockState execute_plan(const PreparationPlan &plan) {
    const Eigen::Index n = plan.reference_state.size();
    // 50/50 beam splitter on |eta>|0>.
    ComplexVector split(2 * n);
    split.head(n) = plan.reference_state / std::numbers::sqrt2;
    split.tail(n) = plan.reference_state / std::numbers::sqrt2;

    ComplexMatrix mixed = ComplexMatrix::Zero(2 * n, 2 * n);
    for (size_t j = 0; j < plan.branch_unitaries.size(); ++j) {
        ComplexVector out(2 * n);
        out.head(n) = plan.branch_unitaries[j].path0 * split.head(n);
        out.tail(n) = plan.branch_unitaries[j].path1 * split.tail(n);
        mixed += plan.probabilities[j] * out * out.adjoint();
    }

    ComplexMatrix rho = ComplexMatrix::Zero(2 * n, 2 * n);
    for (const MixtureTerm &term : plan.final_mixture) {
        ComplexMatrix gate = ComplexMatrix::Identity(2 * n, 2 * n);
        gate.bottomRightCorner(n, n) = term.unitary.adjoint();
        rho += term.weight * gate * mixed * gate.adjoint();
    }
    return BlockState::from_assembled(rho);
}

}  // namespace uhlmann
