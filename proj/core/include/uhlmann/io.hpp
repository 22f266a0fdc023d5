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

#ifndef UHLMANN_IO_HPP
#define UHLMANN_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "uhlmann/linalg.hpp"
#include "uhlmann/preparation.hpp"
#include "uhlmann/states.hpp"
#include "uhlmann/transport.hpp"

namespace uhlmann {

// File formats. A matrix is an array of rows; each entry is a [re, im] pair.
// Doubles are printed with the shortest representation that parses back to
// the same bits, so emit -> parse round-trips exactly.
//
// Sequence file: { "n": int, "sigmas": [matrix...], "labels": [string...]? }
// Probe file:    { "n": int, "sigmas": [matrix], "vtilde": matrix? }
//
// All parse errors throw Error(kParse) whose message names the JSON path of
// the offending value, e.g. "sigmas[1][0][2]".

/// Trace tolerance applied to parsed states unless renormalization is requested.
inline constexpr double kFileTraceTol = 1e-8;

struct ParsedStates {
    int n = 0;
    std::vector<DensityMatrix> sigmas;
    std::vector<std::string> labels;
    std::optional<ComplexMatrix> vtilde;
};

ParsedStates parse_states(const std::string &text, bool renormalize = false);
SequenceSpec parse_sequence(const std::string &text, bool renormalize = false);
std::string emit_sequence(const SequenceSpec &seq);

struct StepReport {
    int step = 0;
    double parallelity_e = 0.0;
    double objective = 0.0;
    double fidelity = 0.0;
    int iterations = 0;
};

struct RunReport {
    std::string method;
    std::string initial = "identity";
    int n = 0;
    int k = 0;
    bool faithful = false;
    bool admissible = true;
    std::optional<int> failing_index;
    std::string admissibility_reason;
    ComplexMatrix holonomy;
    ComplexMatrix unitary_completion;
    ComplexMatrix final_support;
    std::optional<double> discrepancy;  // Frobenius distance to the analytic holonomy
    std::vector<StepReport> steps;
    double timing_ms = 0.0;
};

std::string emit_report(const RunReport &report);
RunReport parse_report(const std::string &text);

std::string emit_plan(const PreparationPlan &plan);

/// CSV with header "step,iteration,objective", one row per ascent iterate.
std::string trace_csv(const std::vector<TransportRecord> &records);

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

}  // namespace uhlmann

#endif
