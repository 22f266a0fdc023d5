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

#ifndef UHLMANN_OPTIMIZER_HPP
#define UHLMANN_OPTIMIZER_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uhlmann/linalg.hpp"
#include "uhlmann/states.hpp"

namespace uhlmann {

/// Feasible set for V~ when maximizing Re Tr(A V~^dagger).
enum class Domain { kUnitary, kContraction };

enum class SearchMethod { kClosed, kAscent };

/// kBacktracking starts every line search at AscentOptions::initial_step.
/// kBarzilaiBorwein starts from the two-point step estimate (unitary domain)
/// or from twice the last accepted step (contraction domain); both halve on
/// rejection.
enum class StepRule { kBacktracking, kBarzilaiBorwein };

enum class AscentStatus { kConverged, kStalled, kMaxIterations };

struct TracePoint {
    int iteration = 0;
    double objective = 0.0;
};

struct MaximizerResult {
    ComplexMatrix vstar;
    double value = 0.0;
    ComplexMatrix support_in;   // P_R(A^dagger)
    ComplexMatrix support_out;  // P_R(A)
    std::vector<TracePoint> trace;
    int iterations = 0;
    AscentStatus status = AscentStatus::kConverged;
    double gradient_norm = 0.0;
};

struct AscentOptions {
    StepRule step_rule = StepRule::kBarzilaiBorwein;
    double initial_step = 0.5;
    /// Converged once an accepted step gains less than `tol` while the
    /// (projected) gradient norm is at most `gradient_tol`.
    double tol = 1e-10;
    double gradient_tol = 1e-10;
    int max_iters = 10000;
    /// Accepted steps may lose at most this much, relative to max(1, |f|);
    /// it absorbs rounding in objectives evaluated through simulated states.
    double noise_floor = 1e-14;
};

using Objective = std::function<double(const ComplexMatrix &)>;

/// Canonical maximizer sqrt(A A^dagger)^+ A (the Q = 0 choice); completed to a
/// unitary for Domain::kUnitary. The value is Tr sqrt(A A^dagger) either way.
MaximizerResult maximize_closed(const ComplexMatrix &a, Domain domain);

/// Local ascent from `start`: V <- V exp(t G) with G the skew-Hermitian part of
/// V^dagger A on the unitary group, and V <- clip(V + t A) (singular values
/// capped at 1) on contractions. `objective` defaults to Re Tr(A V^dagger);
/// the gradient always comes from A.
MaximizerResult ascend(const ComplexMatrix &a, Domain domain, const ComplexMatrix &start,
                       const AscentOptions &options = {}, const Objective &objective = {});

/// Singular values of m clipped to at most 1.
ComplexMatrix clip_to_contraction(const ComplexMatrix &m);

struct ParallelStep {
    Subamplitude next;  // (sigma_next, V~*) before any range projection
    MaximizerResult search;
    double algebraic_objective = 0.0;       // Re Tr(A V~*^dagger)
    double interferometric_objective = 0.0;  // 2N (E - 1/2) from Tr(Z rho_b (x) rho_a)
};

/// Maximizes the parallelity of D(sigma_next, sqrt(sigma_next) V~) against
/// the encoded current subamplitude, i.e. Re Tr(A V~^dagger) with
/// A = sqrt(sigma_next) W_current. With SearchMethod::kAscent the objective is
/// evaluated on encoded states through the Z contraction.
ParallelStep parallel_amplitude(const DensityMatrix &sigma_next, const Subamplitude &current, SearchMethod method,
                                Domain domain, const AscentOptions &options = {},
                                const std::optional<ComplexMatrix> &start = std::nullopt);

std::string trace_csv(const std::vector<TracePoint> &trace);

const char *to_string(Domain domain);
const char *to_string(SearchMethod method);
const char *to_string(AscentStatus status);

}  // namespace uhlmann

#endif
