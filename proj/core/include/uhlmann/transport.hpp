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

#ifndef UHLMANN_TRANSPORT_HPP
#define UHLMANN_TRANSPORT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uhlmann/linalg.hpp"
#include "uhlmann/optimizer.hpp"
#include "uhlmann/states.hpp"

namespace uhlmann {

/// Ordered sequence sigma_1, ..., sigma_K (K >= 2) of states of one dimension.
struct SequenceSpec {
    int n = 0;
    std::vector<DensityMatrix> sigmas;
    bool faithful = false;
    std::vector<std::string> labels;

    static SequenceSpec make(std::vector<DensityMatrix> sigmas, std::vector<std::string> labels = {});
    int size() const {
        return static_cast<int>(sigmas.size());
    }
};

enum class HolonomyMethod { kAnalytic, kOperationalClosed, kOperationalAscent };

const char *to_string(HolonomyMethod method);
std::optional<HolonomyMethod> parse_holonomy_method(const std::string &name);

/// Step k transports from sigma_k to sigma_{k+1} (k is 1-based).
struct TransportRecord {
    int step = 0;
    ComplexMatrix vtilde;     // V~_{k+1}
    ComplexMatrix projector;  // P_R(sqrt(sigma_{k+1}) sqrt(sigma_k))
    double parallelity_e = 0.0;
    double objective = 0.0;  // Re Tr(W_{k+1}^dagger W_k)
    std::vector<TracePoint> trace;
    int iterations = 0;
    AscentStatus status = AscentStatus::kConverged;
};

struct HolonomyResult {
    ComplexMatrix u_uhl;  // unitary when faithful, partial isometry otherwise
    HolonomyMethod method = HolonomyMethod::kAnalytic;
    std::vector<TransportRecord> records;
    ComplexMatrix initial_v;
    ComplexMatrix final_support;       // P_R(sqrt(sigma_K) sqrt(sigma_{K-1}))
    ComplexMatrix unitary_completion;  // one unitary extension; non-canonical when unfaithful
    bool faithful = false;
    double readout_probability = 0.0;
    bool readout_verified = false;
};

struct AdmissibilityReport {
    bool admissible = true;
    std::optional<int> failing_index;  // 1-based step k
    double max_mismatch = 0.0;
    std::string reason;
};

/// P_R(sqrt(next) sqrt(prev)).
ComplexMatrix overlap_projector(const DensityMatrix &next, const DensityMatrix &prev);

/// Partial isometry in the polar decomposition of sqrt(next) sqrt(prev),
/// computed as sqrt(sqrt(next) prev sqrt(next))^+ sqrt(next) sqrt(prev).
ComplexMatrix relative_polar(const DensityMatrix &next, const DensityMatrix &prev);

/// Checks R(sqrt(s_{k+1}) sqrt(s_k)) = R(sqrt(s_{k+1}) sqrt(s_{k+2})) for
/// k = 1..K-2. A vanishing overlap sqrt(s_{k+1}) sqrt(s_k) = 0 also fails:
/// the holonomy would be zero and nothing can be read out.
AdmissibilityReport is_admissible(const SequenceSpec &seq, double tol = 1e-8);

/// Ordered product U_{K,K-1} ... U_{2,1} of relative polar factors.
HolonomyResult analytic_holonomy(const SequenceSpec &seq);

/// Runs the interferometric transport loop: encode, maximize parallelity,
/// project onto the overlap range, repeat; then undo the initial amplitude
/// with (1 (+) V1bar), filter on the final overlap range and read the
/// holonomy out of the probe maximizer.
///
/// `initial_v` must be a partial isometry whose final space contains R(sigma_1)
/// (so sqrt(sigma_1) V~_1 is an amplitude); it defaults to the identity.
HolonomyResult operational_holonomy(const SequenceSpec &seq, const std::optional<ComplexMatrix> &initial_v,
                                    HolonomyMethod method, const AscentOptions &options = {});

/// Tr sqrt(sqrt(a) b sqrt(a)).
double fidelity(const DensityMatrix &a, const DensityMatrix &b);

/// sqrt(2 - 2 F^2), the form printed alongside the fidelity in the source
/// text of this construction. The more common Bures convention is sqrt(2 - 2F).
double bures_distance(const DensityMatrix &a, const DensityMatrix &b);

struct StepDiagnostics {
    int step = 0;
    double parallelity_e = 0.0;
    double objective = 0.0;
    double fidelity = 0.0;
    double projector_error = 0.0;
    double positivity_error = 0.0;  // faithful only
};

struct PropertyCheck {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyReport {
    AdmissibilityReport admissibility;
    bool transported = false;
    HolonomyMethod method = HolonomyMethod::kOperationalClosed;
    ComplexMatrix analytic;
    ComplexMatrix operational;
    double discrepancy = 0.0;
    double gauge_discrepancy = 0.0;
    double composition_error = 0.0;
    std::vector<StepDiagnostics> steps;
    std::vector<PropertyCheck> checks;
    std::vector<std::string> errors;

    bool passed() const;
};

/// Runs the analytic and operational routes side by side and measures how
/// far apart they are, including gauge invariance over `gauge_trials` random
/// initial amplitudes. Inadmissible sequences are reported, not transported.
/// Gauge trials are spread over `threads` workers; trial t uses
/// derive_seed(seed, t).
VerifyReport verify(const SequenceSpec &seq, HolonomyMethod method, int gauge_trials = 3,
                    std::uint64_t seed = 1, const AscentOptions &options = {}, int threads = 1);

/// Samples path(s) at `points` equally spaced parameters in [s0, s1].
SequenceSpec sample_path(const std::function<DensityMatrix(double)> &path, int points, double s0 = 0.0,
                         double s1 = 1.0);

}  // namespace uhlmann

#endif
