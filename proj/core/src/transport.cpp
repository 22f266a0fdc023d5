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

#include "uhlmann/transport.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "uhlmann/error.hpp"
#include "uhlmann/interferometry.hpp"

namespace uhlmann {

namespace {

void require_same_dim(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "states of dimension " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
}

void require_admissible(const SequenceSpec &seq) {
    AdmissibilityReport report = is_admissible(seq);
    if (!report.admissible) {
        throw Error(ErrorCode::kNotAdmissible, report.reason);
    }
}

double positivity_error(const ComplexMatrix &m) {
    double asym = (m - m.adjoint()).norm();
    double lo = eig_hermitian(hermitian_part(m)).eigenvalues(0);
    return std::max(asym, std::max(0.0, -lo));
}

}  // namespace

SequenceSpec SequenceSpec::make(std::vector<DensityMatrix> sigmas, std::vector<std::string> labels) {
    if (sigmas.size() < 2) {
        throw Error(ErrorCode::kBadParams, "a sequence needs at least two states");
    }
    if (!labels.empty() && labels.size() != sigmas.size()) {
        throw Error(ErrorCode::kBadParams, "labels must match the number of states");
    }
    SequenceSpec seq;
    seq.n = sigmas.front().dim();
    seq.faithful = true;
    for (const DensityMatrix &s : sigmas) {
        if (s.dim() != seq.n) {
            throw Error(ErrorCode::kDimensionMismatch, "all states in a sequence must share one dimension");
        }
        seq.faithful = seq.faithful && s.is_faithful();
    }
    seq.sigmas = std::move(sigmas);
    seq.labels = std::move(labels);
    return seq;
}

const char *to_string(HolonomyMethod method) {
    switch (method) {
        case HolonomyMethod::kAnalytic:
            return "analytic";
        case HolonomyMethod::kOperationalClosed:
            return "closed";
        case HolonomyMethod::kOperationalAscent:
            return "ascent";
    }
    return "unknown";
}

std::optional<HolonomyMethod> parse_holonomy_method(const std::string &name) {
    if (name == "analytic") {
        return HolonomyMethod::kAnalytic;
    }
    if (name == "closed") {
        return HolonomyMethod::kOperationalClosed;
    }
    if (name == "ascent") {
        return HolonomyMethod::kOperationalAscent;
    }
    return std::nullopt;
}

ComplexMatrix overlap_projector(const DensityMatrix &next, const DensityMatrix &prev) {
    require_same_dim(next, prev);
    return range_projector(next.sqrt() * prev.sqrt());
}

ComplexMatrix relative_polar(const DensityMatrix &next, const DensityMatrix &prev) {
    require_same_dim(next, prev);
    ComplexMatrix overlap = next.sqrt() * prev.sqrt();
    ComplexMatrix modulus = sqrt_psd(hermitian_part(next.sqrt() * prev.matrix() * next.sqrt()));
    return mp_pinv(modulus) * overlap;
}

AdmissibilityReport is_admissible(const SequenceSpec &seq, double tol) {
    AdmissibilityReport report;
    const int k_max = seq.size();
    std::vector<ComplexMatrix> forward;  // P_R(sqrt(s_{k+1}) sqrt(s_k))
    for (int k = 0; k + 1 < k_max; ++k) {
        ComplexMatrix overlap = seq.sigmas[k + 1].sqrt() * seq.sigmas[k].sqrt();
        if (numerical_rank(overlap) == 0) {
            report.admissible = false;
            report.failing_index = k + 1;
            report.reason = "states " + std::to_string(k + 1) + " and " + std::to_string(k + 2) +
                            " have vanishing overlap";
            return report;
        }
        forward.push_back(range_projector(overlap));
    }
    for (int k = 0; k + 2 < k_max; ++k) {
        ComplexMatrix backward = range_projector(seq.sigmas[k + 1].sqrt() * seq.sigmas[k + 2].sqrt());
        double mismatch = (forward[k] - backward).norm();
        report.max_mismatch = std::max(report.max_mismatch, mismatch);
        if (!projectors_equal(forward[k], backward, tol) && report.admissible) {
            report.admissible = false;
            report.failing_index = k + 1;
            report.reason = "range mismatch at k = " + std::to_string(k + 1) + " (||P - Q||_F = " +
                            std::to_string(mismatch) + ")";
        }
    }
    return report;
}

HolonomyResult analytic_holonomy(const SequenceSpec &seq) {
    require_admissible(seq);
    const int n = seq.n;
    HolonomyResult out;
    out.method = HolonomyMethod::kAnalytic;
    out.faithful = seq.faithful;
    out.initial_v = ComplexMatrix::Identity(n, n);

    ComplexMatrix product = ComplexMatrix::Identity(n, n);
    for (int k = 0; k + 1 < seq.size(); ++k) {
        const DensityMatrix &prev = seq.sigmas[k];
        const DensityMatrix &next = seq.sigmas[k + 1];
        product = relative_polar(next, prev) * product;
        TransportRecord rec;
        rec.step = k + 1;
        rec.vtilde = product;
        rec.projector = overlap_projector(next, prev);
        rec.objective = fidelity(next, prev);
        rec.parallelity_e = 0.5 + rec.objective / (2.0 * n);
        out.records.push_back(std::move(rec));
    }
    out.u_uhl = product;
    out.final_support = out.records.back().projector;
    if (seq.faithful && !is_unitary(product)) {
        throw Error(ErrorCode::kInvalidState, "faithful sequence produced a non-unitary holonomy");
    }
    out.unitary_completion = complete_to_unitary(product);
    return out;
}

HolonomyResult operational_holonomy(const SequenceSpec &seq, const std::optional<ComplexMatrix> &initial_v,
                                    HolonomyMethod method, const AscentOptions &options) {
    if (method == HolonomyMethod::kAnalytic) {
        return analytic_holonomy(seq);
    }
    require_admissible(seq);
    const int n = seq.n;
    const DensityMatrix &first = seq.sigmas.front();

    ComplexMatrix v1 = initial_v.value_or(ComplexMatrix::Identity(n, n));
    if (v1.rows() != n || v1.cols() != n || !is_partial_isometry(v1)) {
        throw Error(ErrorCode::kBadInitialAmplitude, "initial V~ must be an N x N partial isometry");
    }
    const ComplexMatrix &support1 = first.support_projector();
    if ((support1 * v1 * v1.adjoint() * support1 - support1).norm() > 1e-8) {
        throw Error(ErrorCode::kBadInitialAmplitude, "sqrt(sigma_1) V~_1 is not an amplitude of sigma_1");
    }

    const Domain domain = seq.faithful ? Domain::kUnitary : Domain::kContraction;
    const SearchMethod search =
        method == HolonomyMethod::kOperationalAscent ? SearchMethod::kAscent : SearchMethod::kClosed;
    const ZOperator z = build_z(n);

    HolonomyResult out;
    out.method = method;
    out.faithful = seq.faithful;
    out.initial_v = v1;

    Subamplitude current(first, v1);
    for (int k = 0; k + 1 < seq.size(); ++k) {
        const DensityMatrix &next = seq.sigmas[k + 1];
        ParallelStep step = parallel_amplitude(next, current, search, domain, options);
        ComplexMatrix projector = overlap_projector(next, seq.sigmas[k]);
        Subamplitude advanced(next, projector * step.next.vtilde());

        TransportRecord rec;
        rec.step = k + 1;
        rec.vtilde = advanced.vtilde();
        rec.projector = projector;
        rec.parallelity_e = parallelity_e(z, encode(advanced), encode(current));
        rec.objective = re_inner(current.w(), advanced.w());
        rec.trace = std::move(step.search.trace);
        rec.iterations = step.search.iterations;
        rec.status = step.search.status;
        out.records.push_back(std::move(rec));

        current = std::move(advanced);
    }

    out.final_support = out.records.back().projector;
    BlockState final_state = apply_path_unitary(encode(current), complete_to_unitary(v1));
    BlockState filtered = filter_state(final_state, out.final_support);
    ReadoutResult readout = readout_unitary(filtered, out.final_support);
    out.u_uhl = readout.unitary;
    out.unitary_completion = readout.completion;
    out.readout_probability = readout.max_probability;
    out.readout_verified = readout.verified;
    return out;
}

double fidelity(const DensityMatrix &a, const DensityMatrix &b) {
    require_same_dim(a, b);
    // Tr sqrt(sqrt(a) b sqrt(a)) = ||sqrt(a) sqrt(b)||_1. Singular values carry
    // roundoff of order eps, where eigenvalues of the product would give sqrt(eps).
    return nuclear_norm(a.sqrt() * b.sqrt());
}

double bures_distance(const DensityMatrix &a, const DensityMatrix &b) {
    double f = fidelity(a, b);
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * f * f));
}

bool VerifyReport::passed() const {
    if (!admissibility.admissible || !transported || !errors.empty()) {
        return false;
    }
    return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck &c) { return c.passed; });
}

VerifyReport verify(const SequenceSpec &seq, HolonomyMethod method, int gauge_trials, std::uint64_t seed,
                    const AscentOptions &options, int threads) {
    VerifyReport report;
    report.method = method;
    report.admissibility = is_admissible(seq);
    if (!report.admissibility.admissible) {
        return report;
    }
    const bool ascent = method == HolonomyMethod::kOperationalAscent;
    const double route_tol = ascent ? 1e-5 : 1e-6;
    const double identity_tol = ascent ? 1e-6 : 1e-8;

    try {
        HolonomyResult analytic = analytic_holonomy(seq);
        HolonomyResult operational = operational_holonomy(seq, std::nullopt, method, options);
        report.transported = true;
        report.analytic = analytic.u_uhl;
        report.operational = operational.u_uhl;
        report.discrepancy = frobenius_distance(analytic.u_uhl, operational.u_uhl);
        // V~_K V~_1^dagger from the iterated projections (V~_1 = identity here).
        report.composition_error = frobenius_distance(
            operational.records.back().vtilde * operational.initial_v.adjoint(), analytic.u_uhl);

        double max_gap = 0.0;
        double max_projector = 0.0;
        double max_positivity = 0.0;
        Subamplitude previous(seq.sigmas.front(), operational.initial_v);
        for (size_t k = 0; k < operational.records.size(); ++k) {
            const TransportRecord &rec = operational.records[k];
            const DensityMatrix &next = seq.sigmas[k + 1];
            Subamplitude advanced(next, rec.vtilde);
            StepDiagnostics d;
            d.step = rec.step;
            d.parallelity_e = rec.parallelity_e;
            d.objective = rec.objective;
            d.fidelity = fidelity(next, seq.sigmas[k]);
            d.projector_error = (rec.vtilde * rec.vtilde.adjoint() - rec.projector).norm();
            if (seq.faithful) {
                d.positivity_error = positivity_error(advanced.w().adjoint() * previous.w());
            }
            max_gap = std::max(max_gap, std::abs(d.objective - d.fidelity));
            max_projector = std::max(max_projector, d.projector_error);
            max_positivity = std::max(max_positivity, d.positivity_error);
            report.steps.push_back(d);
            previous = advanced;
        }

        // Each gauge trial draws its initial amplitude from its own derived
        // seed, so the result does not depend on the thread count.
        const ComplexMatrix &support1 = seq.sigmas.front().support_projector();
        std::vector<double> gauge(std::max(gauge_trials, 0), 0.0);
        std::vector<std::string> gauge_errors(gauge.size());
        std::atomic<int> next_trial{0};
        auto worker = [&]() {
            for (int t = next_trial++; t < gauge_trials; t = next_trial++) {
                try {
                    ComplexMatrix u = random_unitary(seq.n, derive_seed(seed, static_cast<std::uint64_t>(t)));
                    ComplexMatrix v1 = seq.faithful ? u : ComplexMatrix(support1 * u);
                    HolonomyResult other = operational_holonomy(seq, v1, method, options);
                    gauge[t] = frobenius_distance(other.u_uhl, operational.u_uhl);
                } catch (const Error &e) {
                    gauge_errors[t] = e.what();
                }
            }
        };
        const int pool = std::clamp(threads, 1, std::max(gauge_trials, 1));
        std::vector<std::thread> workers;
        for (int i = 1; i < pool; ++i) {
            workers.emplace_back(worker);
        }
        worker();
        for (std::thread &w : workers) {
            w.join();
        }
        for (size_t t = 0; t < gauge.size(); ++t) {
            report.gauge_discrepancy = std::max(report.gauge_discrepancy, gauge[t]);
            if (!gauge_errors[t].empty()) {
                report.errors.push_back("gauge trial " + std::to_string(t) + ": " + gauge_errors[t]);
            }
        }

        auto add = [&report](std::string name, double measured, double tol) {
            report.checks.push_back({std::move(name), measured, tol, measured <= tol});
        };
        add("oracle_equivalence", report.discrepancy, route_tol);
        add("gauge_invariance", report.gauge_discrepancy, route_tol);
        add("composition_identity", report.composition_error, route_tol);
        add("objective_equals_fidelity", max_gap, 1e-8);
        add("support_projector_identity", max_projector, identity_tol);
        if (seq.faithful) {
            add("parallelity_positivity", max_positivity, identity_tol);
        }
        add("readout_maximal", operational.readout_verified ? 0.0 : 1.0, 0.0);
    } catch (const Error &e) {
        report.errors.emplace_back(e.what());
    }
    return report;
}

SequenceSpec sample_path(const std::function<DensityMatrix(double)> &path, int points, double s0, double s1) {
    if (points < 2) {
        throw Error(ErrorCode::kBadParams, "path sampling needs at least two points");
    }
    std::vector<DensityMatrix> sigmas;
    sigmas.reserve(points);
    for (int j = 0; j < points; ++j) {
        double s = s0 + (s1 - s0) * static_cast<double>(j) / static_cast<double>(points - 1);
        sigmas.push_back(path(s));
    }
    return SequenceSpec::make(std::move(sigmas));
}

}  // namespace uhlmann
