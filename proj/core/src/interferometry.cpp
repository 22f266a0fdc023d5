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

#include "uhlmann/interferometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uhlmann/error.hpp"

namespace uhlmann {

namespace {

void require_same_dim(const BlockState &a, const BlockState &b) {
    if (a.n != b.n) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "two-path states of dimension " + std::to_string(a.n) + " and " + std::to_string(b.n));
    }
}

// Hadamard on the slowest qubit of a (2 * half)-dimensional space.
ComplexMatrix hadamard_on_slow_qubit(Eigen::Index half) {
    const double h = std::numbers::sqrt2 / 2.0;
    ComplexMatrix id = ComplexMatrix::Identity(half, half);
    ComplexMatrix out(2 * half, 2 * half);
    out.topLeftCorner(half, half) = h * id;
    out.topRightCorner(half, half) = h * id;
    out.bottomLeftCorner(half, half) = h * id;
    out.bottomRightCorner(half, half) = -h * id;
    return out;
}

}  // namespace

ZOperator build_z(int n) {
    if (n < 1) {
        throw Error(ErrorCode::kBadParams, "Z needs n >= 1");
    }
    const int d = 2 * n;
    ZOperator z;
    z.n = n;
    z.permutation.resize(static_cast<size_t>(d) * d);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            int path_a = a / n;
            int path_b = b / n;
            int j = a * d + b;
            z.permutation[j] = path_a == path_b ? j : b * d + a;
        }
    }
    z.matrix = ComplexMatrix::Zero(d * d, d * d);
    for (int j = 0; j < d * d; ++j) {
        z.matrix(z.permutation[j], j) = 1.0;
    }
    return z;
}

double parallelity_e(const ZOperator &z, const BlockState &rho_b, const BlockState &rho_a) {
    require_same_dim(rho_b, rho_a);
    if (z.n != rho_a.n) {
        throw Error(ErrorCode::kDimensionMismatch, "Z built for a different dimension");
    }
    const int d = 2 * z.n;
    ComplexMatrix mb = rho_b.assembled();
    ComplexMatrix ma = rho_a.assembled();
    // Tr(Z X) = sum_j X(j, perm[j]) with X = rho_b (x) rho_a.
    Complex total = 0.0;
    for (int j = 0; j < d * d; ++j) {
        int pj = z.permutation[j];
        total += mb(j / d, pj / d) * ma(j % d, pj % d);
    }
    return total.real();
}

double parallelity_e(const BlockState &rho_b, const BlockState &rho_a) {
    require_same_dim(rho_b, rho_a);
    return parallelity_e(build_z(rho_a.n), rho_b, rho_a);
}

double parallelity_e_blocks(const BlockState &rho_b, const BlockState &rho_a) {
    require_same_dim(rho_b, rho_a);
    double diag = rho_b.b00.trace().real() * rho_a.b00.trace().real() +
                  rho_b.b11.trace().real() * rho_a.b11.trace().real();
    return diag + 2.0 * (rho_b.b10() * rho_a.b01).trace().real();
}

double parallelity_circuit(const BlockState &rho_b, const BlockState &rho_a) {
    require_same_dim(rho_b, rho_a);
    const ZOperator z = build_z(rho_a.n);
    const Eigen::Index pair = z.matrix.rows();
    ComplexMatrix joint = kron(rho_b.assembled(), rho_a.assembled());

    ComplexMatrix state = ComplexMatrix::Zero(2 * pair, 2 * pair);
    state.topLeftCorner(pair, pair) = joint;

    ComplexMatrix had = hadamard_on_slow_qubit(pair);
    ComplexMatrix controlled = ComplexMatrix::Identity(2 * pair, 2 * pair);
    controlled.topLeftCorner(pair, pair) = z.matrix;

    ComplexMatrix circuit = had * controlled * had;
    state = circuit * state * circuit.adjoint();
    return state.topLeftCorner(pair, pair).trace().real();
}

ProbeResult probe_probability(const BlockState &rho, const ComplexMatrix &u) {
    const int n = rho.n;
    if (u.rows() != n || u.cols() != n) {
        throw Error(ErrorCode::kDimensionMismatch, "trial unitary must be N x N");
    }
    if (!is_unitary(u)) {
        throw Error(ErrorCode::kNotUnitary, "trial operator is not unitary");
    }
    ComplexMatrix total = ComplexMatrix::Identity(2 * n, 2 * n);
    total.bottomRightCorner(n, n) = u;
    ComplexMatrix circuit = hadamard_on_slow_qubit(n) * total;
    ComplexMatrix out = circuit * rho.assembled() * circuit.adjoint();

    ProbeResult result;
    result.probability = out.topLeftCorner(n, n).trace().real();
    ComplexMatrix w = 2.0 * std::sqrt(static_cast<double>(n)) * rho.b01;
    result.formula_probability = 0.5 + (w * u.adjoint()).trace().real() / (2.0 * std::sqrt(static_cast<double>(n)));
    result.trial_unitary = u;
    return result;
}

BlockState apply_path_unitary(const BlockState &rho, const ComplexMatrix &u) {
    if (u.rows() != rho.n || u.cols() != rho.n) {
        throw Error(ErrorCode::kDimensionMismatch, "path unitary must be N x N");
    }
    BlockState out = rho;
    out.b01 = rho.b01 * u.adjoint();
    out.b11 = u * rho.b11 * u.adjoint();
    return out;
}

ReadoutResult readout_unitary(const BlockState &rho, const ComplexMatrix &support, int probes, std::uint64_t seed) {
    const int n = rho.n;
    if (support.rows() != n || support.cols() != n) {
        throw Error(ErrorCode::kDimensionMismatch, "support projector must be N x N");
    }
    if (rho.b01.norm() < rank_tol()) {
        throw Error(ErrorCode::kDegenerateReadout, "off-diagonal block vanishes; nothing to read out");
    }
    // p(U) = 1/2 + Re Tr(b01 U^dagger) is maximized by the isometric polar factor of b01.
    ComplexMatrix canonical = polar_left(rho.b01).isometry_part;

    ReadoutResult out;
    out.unitary = support * canonical;
    out.completion = complete_to_unitary(canonical);
    out.max_probability = probe_probability(rho, out.completion).probability;

    Rng rng(seed);
    out.verified = true;
    for (int i = 0; i < probes; ++i) {
        ComplexMatrix g(n, n);
        for (int c = 0; c < n; ++c) {
            for (int r = 0; r < n; ++r) {
                g(r, c) = rng.complex_normal();
            }
        }
        ComplexMatrix kick = expm_skew_hermitian(1e-3 * skew_hermitian_part(g));
        double p = probe_probability(rho, out.completion * kick).probability;
        if (p > out.max_probability + 1e-12) {
            out.verified = false;
        }
    }
    return out;
}

BlockState filter_state(const BlockState &rho, const ComplexMatrix &projector) {
    if (projector.rows() != rho.n || projector.cols() != rho.n) {
        throw Error(ErrorCode::kDimensionMismatch, "filter projector must be N x N");
    }
    BlockState out;
    out.n = rho.n;
    out.b00 = projector * rho.b00 * projector;
    out.b01 = projector * rho.b01;
    out.b11 = rho.b11;
    double t = out.trace();
    if (t <= 1e-12) {
        throw Error(ErrorCode::kVanishingFilter, "post-selection succeeds with probability " + std::to_string(t));
    }
    out.b00 /= t;
    out.b01 /= t;
    out.b11 /= t;
    return out;
}

int sample_detections(double p, int shots, Rng &rng) {
    int hits = 0;
    for (int i = 0; i < shots; ++i) {
        if (rng.uniform() < p) {
            ++hits;
        }
    }
    return hits;
}

}  // namespace uhlmann
