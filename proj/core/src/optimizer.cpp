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

#include "uhlmann/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uhlmann/error.hpp"
#include "uhlmann/interferometry.hpp"

namespace uhlmann {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 60;
constexpr double kMinStep = 1e-8;
constexpr double kMaxStep = 1e8;
constexpr int kReorthogonalizeEvery = 25;

struct Direction {
    ComplexMatrix g;  // ascent direction (tangent for unitaries, Euclidean gradient for contractions)
    double stationarity = 0.0;
};

Direction direction_at(const ComplexMatrix &a, Domain domain, const ComplexMatrix &v) {
    Direction d;
    if (domain == Domain::kUnitary) {
        d.g = skew_hermitian_part(v.adjoint() * a);
        d.stationarity = d.g.norm();
    } else {
        d.g = a;
        d.stationarity = (clip_to_contraction(v + a) - v).norm();
    }
    return d;
}

ComplexMatrix step_from(const ComplexMatrix &v, Domain domain, const Direction &d, double t) {
    if (domain == Domain::kUnitary) {
        return v * expm_skew_hermitian(t * d.g);
    }
    return clip_to_contraction(v + t * d.g);
}

}  // namespace

ComplexMatrix clip_to_contraction(const ComplexMatrix &m) {
    SingularValueDecomposition d = svd(m);
    RealVector s = d.singular_values.cwiseMin(1.0);
    return d.u * s.cast<Complex>().asDiagonal() * d.v.adjoint();
}

MaximizerResult maximize_closed(const ComplexMatrix &a, Domain domain) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::kDimensionMismatch, "maximize_closed requires a square operator");
    }
    MaximizerResult out;
    PolarFactors polar = polar_left(a);
    out.vstar = domain == Domain::kUnitary ? complete_to_unitary(polar.isometry_part) : polar.isometry_part;
    out.value = re_inner(a, out.vstar);
    out.support_in = range_projector(a.adjoint());
    out.support_out = range_projector(a);
    out.trace.push_back({0, out.value});
    return out;
}

MaximizerResult ascend(const ComplexMatrix &a, Domain domain, const ComplexMatrix &start,
                       const AscentOptions &options, const Objective &objective) {
    if (a.rows() != a.cols() || start.rows() != a.rows() || start.cols() != a.cols()) {
        throw Error(ErrorCode::kDimensionMismatch, "ascend: A and the start point must be square and equal-sized");
    }
    if (domain == Domain::kUnitary && !is_unitary(start)) {
        throw Error(ErrorCode::kBadParams, "ascend: start is not unitary");
    }
    if (domain == Domain::kContraction && spectral_norm(start) > 1.0 + 1e-9) {
        throw Error(ErrorCode::kBadParams, "ascend: start is not a contraction");
    }
    const Objective f = objective ? objective : Objective([&a](const ComplexMatrix &v) { return re_inner(a, v); });

    MaximizerResult out;
    out.support_in = range_projector(a.adjoint());
    out.support_out = range_projector(a);

    ComplexMatrix v = domain == Domain::kContraction ? clip_to_contraction(start) : start;
    double value = f(v);
    out.trace.push_back({0, value});

    Direction dir = direction_at(a, domain, v);
    Direction prev_dir;
    double prev_step = 0.0;
    double last_gain = 0.0;
    bool have_prev = false;
    out.status = AscentStatus::kMaxIterations;

    int iter = 0;
    for (; iter < options.max_iters; ++iter) {
        bool small_gain = iter == 0 || last_gain < options.tol;
        if (dir.stationarity <= options.gradient_tol && small_gain) {
            out.status = AscentStatus::kConverged;
            break;
        }

        double t = options.initial_step;
        if (options.step_rule == StepRule::kBarzilaiBorwein && have_prev) {
            if (domain == Domain::kUnitary) {
                ComplexMatrix s = prev_step * prev_dir.g;
                ComplexMatrix y = prev_dir.g - dir.g;
                double sy = re_inner(s, y);
                if (sy > 0.0) {
                    t = std::clamp(s.squaredNorm() / sy, kMinStep, kMaxStep);
                }
            } else {
                t = std::min(2.0 * prev_step, kMaxStep);
            }
        }

        const double squared = dir.g.squaredNorm();
        const double slack = options.noise_floor * std::max(1.0, std::abs(value));
        bool accepted = false;
        ComplexMatrix candidate;
        double candidate_value = value;
        for (int h = 0; h < kMaxHalvings; ++h) {
            candidate = step_from(v, domain, dir, t);
            candidate_value = f(candidate);
            double required = domain == Domain::kUnitary ? kArmijo * t * squared
                                                         : kArmijo * (candidate - v).squaredNorm() / t;
            if (candidate_value >= value + required - slack) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            out.status = AscentStatus::kStalled;
            break;
        }

        if (domain == Domain::kUnitary && (iter + 1) % kReorthogonalizeEvery == 0) {
            candidate = polar_left(candidate).isometry_part;
            candidate_value = f(candidate);
        }
        last_gain = candidate_value - value;
        v = std::move(candidate);
        value = candidate_value;
        out.trace.push_back({iter + 1, value});

        prev_dir = std::move(dir);
        prev_step = t;
        have_prev = true;
        dir = direction_at(a, domain, v);
    }

    out.iterations = iter;
    out.gradient_norm = dir.stationarity;
    out.vstar = std::move(v);
    out.value = value;
    return out;
}

ParallelStep parallel_amplitude(const DensityMatrix &sigma_next, const Subamplitude &current, SearchMethod method,
                                Domain domain, const AscentOptions &options,
                                const std::optional<ComplexMatrix> &start) {
    const int n = sigma_next.dim();
    if (current.sigma().dim() != n) {
        throw Error(ErrorCode::kDimensionMismatch, "consecutive states differ in dimension");
    }
    const ComplexMatrix a = sigma_next.sqrt() * current.w();
    const BlockState rho_current = encode(current);
    const ZOperator z = build_z(n);
    const Objective through_z = [&](const ComplexMatrix &v) {
        return 2.0 * n * (parallelity_e(z, encode(sigma_next, v), rho_current) - 0.5);
    };

    MaximizerResult search;
    if (method == SearchMethod::kClosed) {
        search = maximize_closed(a, domain);
    } else {
        ComplexMatrix origin;
        if (start) {
            origin = *start;
        } else if (domain == Domain::kUnitary && is_unitary(current.vtilde())) {
            origin = current.vtilde();
        } else if (domain == Domain::kContraction) {
            origin = current.vtilde();
        } else {
            origin = ComplexMatrix::Identity(n, n);
        }
        search = ascend(a, domain, origin, options, through_z);
        if (search.status == AscentStatus::kMaxIterations) {
            throw Error(ErrorCode::kNoConvergence, "ascent hit max_iters=" + std::to_string(options.max_iters) +
                                                       " with gradient norm " +
                                                       std::to_string(search.gradient_norm));
        }
    }

    ParallelStep step{Subamplitude(sigma_next, search.vstar), std::move(search), 0.0, 0.0};
    step.algebraic_objective = re_inner(a, step.next.vtilde());
    step.interferometric_objective = through_z(step.next.vtilde());
    return step;
}

std::string trace_csv(const std::vector<TracePoint> &trace) {
    std::ostringstream out;
    out.precision(17);
    out << "iteration,objective\n";
    for (const TracePoint &p : trace) {
        out << p.iteration << ',' << p.objective << '\n';
    }
    return out.str();
}

const char *to_string(Domain domain) {
    return domain == Domain::kUnitary ? "unitary" : "contraction";
}

const char *to_string(SearchMethod method) {
    return method == SearchMethod::kClosed ? "closed" : "ascent";
}

const char *to_string(AscentStatus status) {
    switch (status) {
        case AscentStatus::kConverged:
            return "converged";
        case AscentStatus::kStalled:
            return "stalled";
        case AscentStatus::kMaxIterations:
            return "max_iterations";
    }
    return "unknown";
}

}  // namespace uhlmann
