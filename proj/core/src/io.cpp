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

#include "uhlmann/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "uhlmann/error.hpp"

namespace uhlmann {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string &path, const std::string &what) {
    throw Error(ErrorCode::kParse, path + ": " + what);
}

const json &member(const json &obj, const std::string &key, const std::string &path) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(path.empty() ? key : path + "." + key, "missing field");
    }
    return *it;
}

double number_at(const json &v, const std::string &path) {
    if (!v.is_number()) {
        fail(path, "expected a number");
    }
    double x = v.get<double>();
    if (!std::isfinite(x)) {
        fail(path, "non-finite number");
    }
    return x;
}

int int_at(const json &v, const std::string &path) {
    if (!v.is_number_integer()) {
        fail(path, "expected an integer");
    }
    return v.get<int>();
}

ComplexMatrix matrix_from_json(const json &v, const std::string &path, int expected_rows = -1) {
    if (!v.is_array() || v.empty()) {
        fail(path, "expected a non-empty array of rows");
    }
    const int rows = static_cast<int>(v.size());
    if (expected_rows >= 0 && rows != expected_rows) {
        fail(path, "expected " + std::to_string(expected_rows) + " rows, got " + std::to_string(rows));
    }
    ComplexMatrix m(rows, rows);
    for (int i = 0; i < rows; ++i) {
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        const json &row = v[i];
        if (!row.is_array()) {
            fail(row_path, "expected an array of entries");
        }
        if (static_cast<int>(row.size()) != rows) {
            fail(row_path, "matrix is not square (" + std::to_string(row.size()) + " entries in a row of a " +
                               std::to_string(rows) + "-row matrix)");
        }
        for (int j = 0; j < rows; ++j) {
            const std::string entry_path = row_path + "[" + std::to_string(j) + "]";
            const json &entry = row[j];
            if (!entry.is_array() || entry.size() != 2) {
                fail(entry_path, "expected a [re, im] pair");
            }
            m(i, j) = Complex(number_at(entry[0], entry_path + "[0]"), number_at(entry[1], entry_path + "[1]"));
        }
    }
    return m;
}

json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const ComplexVector &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(json::array({v(i).real(), v(i).imag()}));
    }
    return out;
}

json parse_document(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCode::kParse, std::string("$: malformed JSON: ") + e.what());
    }
}

DensityMatrix state_from_json(const json &v, const std::string &path, int n, bool renormalize) {
    ComplexMatrix m = matrix_from_json(v, path, n);
    double tr = m.trace().real();
    if (renormalize) {
        if (!(tr > 0.0)) {
            fail(path, "cannot renormalize a state with non-positive trace");
        }
        m /= tr;
    } else if (std::abs(tr - 1.0) > kFileTraceTol) {
        std::ostringstream msg;
        msg << "trace " << std::setprecision(17) << tr << " differs from 1 (use --renormalize)";
        fail(path, msg.str());
    }
    try {
        return DensityMatrix(m, kFileTraceTol);
    } catch (const Error &e) {
        fail(path, e.what());
    }
}

}  // namespace

ParsedStates parse_states(const std::string &text, bool renormalize) {
    json doc = parse_document(text);
    if (!doc.is_object()) {
        fail("$", "expected an object");
    }
    ParsedStates out;
    out.n = int_at(member(doc, "n", ""), "n");
    if (out.n < 1) {
        fail("n", "dimension must be positive");
    }
    const json &sigmas = member(doc, "sigmas", "");
    if (!sigmas.is_array() || sigmas.empty()) {
        fail("sigmas", "expected a non-empty array of matrices");
    }
    for (size_t k = 0; k < sigmas.size(); ++k) {
        out.sigmas.push_back(state_from_json(sigmas[k], "sigmas[" + std::to_string(k) + "]", out.n, renormalize));
    }
    if (auto it = doc.find("labels"); it != doc.end()) {
        if (!it->is_array() || it->size() != sigmas.size()) {
            fail("labels", "expected one string per state");
        }
        for (size_t k = 0; k < it->size(); ++k) {
            if (!(*it)[k].is_string()) {
                fail("labels[" + std::to_string(k) + "]", "expected a string");
            }
            out.labels.push_back((*it)[k].get<std::string>());
        }
    }
    if (auto it = doc.find("vtilde"); it != doc.end()) {
        out.vtilde = matrix_from_json(*it, "vtilde", out.n);
    }
    return out;
}

SequenceSpec parse_sequence(const std::string &text, bool renormalize) {
    ParsedStates states = parse_states(text, renormalize);
    if (states.sigmas.size() < 2) {
        fail("sigmas", "a sequence needs at least two states");
    }
    return SequenceSpec::make(std::move(states.sigmas), std::move(states.labels));
}

std::string emit_sequence(const SequenceSpec &seq) {
    json doc;
    doc["n"] = seq.n;
    doc["sigmas"] = json::array();
    for (const DensityMatrix &s : seq.sigmas) {
        doc["sigmas"].push_back(matrix_to_json(s.matrix()));
    }
    if (!seq.labels.empty()) {
        doc["labels"] = seq.labels;
    }
    return doc.dump() + "\n";
}

std::string emit_report(const RunReport &r) {
    json doc;
    doc["method"] = r.method;
    doc["initial"] = r.initial;
    doc["n"] = r.n;
    doc["k"] = r.k;
    doc["faithful"] = r.faithful;
    json adm;
    adm["admissible"] = r.admissible;
    adm["failing_index"] = r.failing_index ? json(*r.failing_index) : json(nullptr);
    adm["reason"] = r.admissibility_reason;
    doc["admissibility"] = adm;
    if (r.admissible) {
        doc["holonomy"] = matrix_to_json(r.holonomy);
        doc["unitary_completion"] = matrix_to_json(r.unitary_completion);
        doc["final_support"] = matrix_to_json(r.final_support);
    }
    doc["discrepancy"] = r.discrepancy ? json(*r.discrepancy) : json(nullptr);
    json steps = json::array();
    for (const StepReport &s : r.steps) {
        steps.push_back({{"step", s.step},
                         {"E", s.parallelity_e},
                         {"objective", s.objective},
                         {"fidelity", s.fidelity},
                         {"iterations", s.iterations}});
    }
    doc["steps"] = steps;
    doc["timing_ms"] = r.timing_ms;
    return doc.dump() + "\n";
}

RunReport parse_report(const std::string &text) {
    json doc = parse_document(text);
    if (!doc.is_object()) {
        fail("$", "expected an object");
    }
    RunReport r;
    const json &method = member(doc, "method", "");
    if (!method.is_string()) {
        fail("method", "expected a string");
    }
    r.method = method.get<std::string>();
    if (auto it = doc.find("initial"); it != doc.end() && it->is_string()) {
        r.initial = it->get<std::string>();
    }
    r.n = int_at(member(doc, "n", ""), "n");
    r.k = int_at(member(doc, "k", ""), "k");
    const json &faithful = member(doc, "faithful", "");
    if (!faithful.is_boolean()) {
        fail("faithful", "expected a boolean");
    }
    r.faithful = faithful.get<bool>();
    const json &adm = member(doc, "admissibility", "");
    const json &admissible = member(adm, "admissible", "admissibility");
    if (!admissible.is_boolean()) {
        fail("admissibility.admissible", "expected a boolean");
    }
    r.admissible = admissible.get<bool>();
    if (auto it = adm.find("failing_index"); it != adm.end() && !it->is_null()) {
        r.failing_index = int_at(*it, "admissibility.failing_index");
    }
    if (auto it = adm.find("reason"); it != adm.end() && it->is_string()) {
        r.admissibility_reason = it->get<std::string>();
    }
    if (r.admissible) {
        r.holonomy = matrix_from_json(member(doc, "holonomy", ""), "holonomy", r.n);
        r.unitary_completion = matrix_from_json(member(doc, "unitary_completion", ""), "unitary_completion", r.n);
        r.final_support = matrix_from_json(member(doc, "final_support", ""), "final_support", r.n);
    }
    if (auto it = doc.find("discrepancy"); it != doc.end() && !it->is_null()) {
        r.discrepancy = number_at(*it, "discrepancy");
    }
    const json &steps = member(doc, "steps", "");
    if (!steps.is_array()) {
        fail("steps", "expected an array");
    }
    for (size_t i = 0; i < steps.size(); ++i) {
        const std::string p = "steps[" + std::to_string(i) + "]";
        StepReport s;
        s.step = int_at(member(steps[i], "step", p), p + ".step");
        s.parallelity_e = number_at(member(steps[i], "E", p), p + ".E");
        s.objective = number_at(member(steps[i], "objective", p), p + ".objective");
        s.fidelity = number_at(member(steps[i], "fidelity", p), p + ".fidelity");
        s.iterations = int_at(member(steps[i], "iterations", p), p + ".iterations");
        r.steps.push_back(s);
    }
    r.timing_ms = number_at(member(doc, "timing_ms", ""), "timing_ms");
    return r;
}

std::string emit_plan(const PreparationPlan &plan) {
    json doc;
    doc["branch_count"] = plan.branch_count;
    doc["probabilities"] = plan.probabilities;
    doc["reference_state"] = vector_to_json(plan.reference_state);
    json branches = json::array();
    for (size_t j = 0; j < plan.branch_unitaries.size(); ++j) {
        json b;
        b["path0"] = matrix_to_json(plan.branch_unitaries[j].path0);
        b["path1"] = matrix_to_json(plan.branch_unitaries[j].path1);
        if (j < plan.branch_states.size()) {
            b["state"] = vector_to_json(plan.branch_states[j]);
        }
        branches.push_back(std::move(b));
    }
    doc["branches"] = branches;
    json mixture = json::array();
    for (const MixtureTerm &t : plan.final_mixture) {
        mixture.push_back({{"weight", t.weight}, {"unitary", matrix_to_json(t.unitary)}});
    }
    doc["final_mixture"] = mixture;
    return doc.dump() + "\n";
}

std::string trace_csv(const std::vector<TransportRecord> &records) {
    std::ostringstream out;
    out << "step,iteration,objective\n" << std::setprecision(17);
    for (const TransportRecord &rec : records) {
        for (const TracePoint &p : rec.trace) {
            out << rec.step << ',' << p.iteration << ',' << p.objective << '\n';
        }
    }
    return out.str();
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::kParse, path + ": cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw Error(ErrorCode::kParse, path + ": cannot write file");
    }
}

}  // namespace uhlmann
