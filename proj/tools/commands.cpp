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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "uhlmann/error.hpp"
#include "uhlmann/interferometry.hpp"
#include "uhlmann/io.hpp"
#include "uhlmann/optimizer.hpp"
#include "uhlmann/random.hpp"
#include "uhlmann/states.hpp"
#include "uhlmann/transport.hpp"

namespace uhlmann::cli {

namespace {

constexpr double kMinAdjacentFidelity = 0.05;
constexpr int kMaxRegenerations = 10000;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::kParse:
        case ErrorCode::kBadParams:
            return kExitUsage;
        case ErrorCode::kNotAdmissible:
            return kExitNotAdmissible;
        default:
            return kExitFailure;
    }
}

int guarded(std::ostream &err, const std::function<int()> &body) {
    try {
        return body();
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

HolonomyMethod method_or_throw(const std::string &name) {
    std::optional<HolonomyMethod> m = parse_holonomy_method(name);
    if (!m) {
        throw Error(ErrorCode::kBadParams, "unknown method '" + name + "' (analytic, closed, ascent)");
    }
    return *m;
}

std::uint64_t parse_seed(const std::string &text, const std::string &what) {
    try {
        size_t used = 0;
        unsigned long long v = std::stoull(text, &used);
        if (used == text.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw Error(ErrorCode::kBadParams, "bad seed in " + what + ": '" + text + "'");
}

std::optional<ComplexMatrix> initial_amplitude(const std::string &spec, const SequenceSpec &seq) {
    if (spec == "identity") {
        return std::nullopt;
    }
    const std::string prefix = "random:";
    if (spec.rfind(prefix, 0) != 0) {
        throw Error(ErrorCode::kBadParams, "--initial must be 'identity' or 'random:<seed>'");
    }
    ComplexMatrix u = random_unitary(seq.n, parse_seed(spec.substr(prefix.size()), "--initial"));
    if (seq.faithful) {
        return u;
    }
    return ComplexMatrix(seq.sigmas.front().support_projector() * u);
}

void emit(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

DensityMatrix density_of(const ComplexMatrix &m) {
    return DensityMatrix(hermitian_part(m / m.trace().real()));
}

std::vector<DensityMatrix> generate_faithful(const GenerateOptions &o) {
    if (o.rank && *o.rank != o.n) {
        throw Error(ErrorCode::kBadParams, "faithful states have rank n");
    }
    std::vector<DensityMatrix> out;
    for (int j = 0; j < o.k; ++j) {
        out.push_back(random_density(o.n, o.n, derive_seed(o.seed, j)));
    }
    return out;
}

// Shared random support; each state is redrawn until its fidelity with the
// previous one reaches kMinAdjacentFidelity.
std::vector<DensityMatrix> generate_equal_support(const GenerateOptions &o) {
    const int rank = o.rank.value_or(std::max(1, o.n / 2));
    if (rank < 1 || rank > o.n) {
        throw Error(ErrorCode::kBadParams, "--rank must lie in [1, n]");
    }
    ComplexMatrix basis = random_unitary(o.n, derive_seed(o.seed, 0)).leftCols(rank);
    std::vector<DensityMatrix> out;
    for (int j = 0; j < o.k; ++j) {
        const std::uint64_t base = derive_seed(o.seed, j + 1);
        for (int attempt = 0;; ++attempt) {
            if (attempt == kMaxRegenerations) {
                throw Error(ErrorCode::kBadParams, "could not reach the minimum adjacent fidelity");
            }
            DensityMatrix s = random_density_on_support(basis, derive_seed(base, attempt));
            if (out.empty() || fidelity(s, out.back()) >= kMinAdjacentFidelity) {
                out.push_back(std::move(s));
                break;
            }
        }
    }
    return out;
}

std::vector<DensityMatrix> generate_pure(const GenerateOptions &o) {
    if (o.rank && *o.rank != 1) {
        throw Error(ErrorCode::kBadParams, "pure states have rank 1");
    }
    std::vector<DensityMatrix> out;
    ComplexVector prev;
    for (int j = 0; j < o.k; ++j) {
        const std::uint64_t base = derive_seed(o.seed, j);
        for (int attempt = 0;; ++attempt) {
            if (attempt == kMaxRegenerations) {
                throw Error(ErrorCode::kBadParams, "could not reach the minimum adjacent overlap");
            }
            Rng rng(derive_seed(base, attempt));
            ComplexVector psi = random_unit_vector(o.n, rng);
            if (j == 0 || std::abs(prev.dot(psi)) >= kMinAdjacentFidelity) {
                out.push_back(DensityMatrix::pure(psi));
                prev = psi;
                break;
            }
        }
    }
    return out;
}

// sigma(s) = exp(-isH) sigma_0 exp(isH) sampled at k points of [0, 1].
SequenceSpec generate_path_sample(const GenerateOptions &o) {
    const int rank = o.rank.value_or(o.n);
    if (rank < 1 || rank > o.n) {
        throw Error(ErrorCode::kBadParams, "--rank must lie in [1, n]");
    }
    DensityMatrix sigma0 = random_density(o.n, rank, derive_seed(o.seed, 0));
    Rng rng(derive_seed(o.seed, 1));
    ComplexMatrix g(o.n, o.n);
    for (int i = 0; i < o.n; ++i) {
        for (int j = 0; j < o.n; ++j) {
            g(i, j) = rng.complex_normal();
        }
    }
    const ComplexMatrix h = hermitian_part(g);
    auto path = [&](double s) {
        ComplexMatrix u = expm_skew_hermitian(Complex(0.0, -s) * h);
        return density_of(u * sigma0.matrix() * u.adjoint());
    };
    SequenceSpec seq = sample_path(path, o.k);
    for (int j = 0; j < o.k; ++j) {
        std::ostringstream label;
        label << "s=" << static_cast<double>(j) / (o.k - 1);
        seq.labels.push_back(label.str());
    }
    return seq;
}

}  // namespace

bool apply_rank_tol_env(std::ostream &err) {
    const char *raw = std::getenv("HOLONOMY_RANK_TOL");
    if (raw == nullptr || *raw == '\0') {
        return true;
    }
    try {
        size_t used = 0;
        double tol = std::stod(raw, &used);
        if (used == std::string(raw).size() && std::isfinite(tol) && tol > 0.0) {
            set_rank_tol(tol);
            return true;
        }
    } catch (const std::exception &) {
    }
    err << "error: HOLONOMY_RANK_TOL must be a positive number, got '" << raw << "'\n";
    return false;
}

int cmd_holonomy(const HolonomyOptions &opts, std::ostream &out, std::ostream &err) {
    return guarded(err, [&]() {
        HolonomyMethod method = method_or_throw(opts.method);
        SequenceSpec seq = parse_sequence(read_text_file(opts.file), opts.renormalize);
        std::optional<ComplexMatrix> initial = initial_amplitude(opts.initial, seq);

        RunReport report;
        report.method = to_string(method);
        report.initial = opts.initial;
        report.n = seq.n;
        report.k = seq.size();
        report.faithful = seq.faithful;
        AdmissibilityReport adm = is_admissible(seq);
        report.admissible = adm.admissible;
        report.failing_index = adm.failing_index;
        report.admissibility_reason = adm.reason;
        if (!adm.admissible) {
            emit(opts.out, emit_report(report), out);
            err << "error: sequence is not admissible: " << adm.reason << "\n";
            return kExitNotAdmissible;
        }

        auto start = std::chrono::steady_clock::now();
        HolonomyResult result = operational_holonomy(seq, initial, method);
        report.timing_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        HolonomyResult oracle = analytic_holonomy(seq);

        report.holonomy = result.u_uhl;
        report.unitary_completion = result.unitary_completion;
        report.final_support = result.final_support;
        report.discrepancy = frobenius_distance(result.u_uhl, oracle.u_uhl);
        for (size_t i = 0; i < result.records.size(); ++i) {
            const TransportRecord &rec = result.records[i];
            report.steps.push_back({rec.step, rec.parallelity_e, rec.objective,
                                    fidelity(seq.sigmas[i + 1], seq.sigmas[i]), rec.iterations});
        }
        if (!opts.trace.empty()) {
            write_text_file(opts.trace, trace_csv(result.records));
        }
        emit(opts.out, emit_report(report), out);
        return kExitOk;
    });
}

int cmd_generate(const GenerateOptions &opts, std::ostream &out, std::ostream &err) {
    return guarded(err, [&]() {
        if (opts.n < 1 || opts.k < 2) {
            throw Error(ErrorCode::kBadParams, "need n >= 1 and k >= 2");
        }
        SequenceSpec seq;
        if (opts.kind == "faithful") {
            seq = SequenceSpec::make(generate_faithful(opts));
        } else if (opts.kind == "equal-support") {
            seq = SequenceSpec::make(generate_equal_support(opts));
        } else if (opts.kind == "pure") {
            seq = SequenceSpec::make(generate_pure(opts));
        } else if (opts.kind == "path-sample") {
            seq = generate_path_sample(opts);
        } else {
            throw Error(ErrorCode::kBadParams,
                        "unknown kind '" + opts.kind + "' (faithful, equal-support, pure, path-sample)");
        }
        emit(opts.out, emit_sequence(seq), out);
        return kExitOk;
    });
}

int cmd_verify(const VerifyOptions &opts, std::ostream &out, std::ostream &err) {
    return guarded(err, [&]() {
        HolonomyMethod method = method_or_throw(opts.method);
        if (method == HolonomyMethod::kAnalytic) {
            throw Error(ErrorCode::kBadParams, "verify compares against the analytic route; use closed or ascent");
        }
        if (opts.trials < 0 || opts.threads < 1) {
            throw Error(ErrorCode::kBadParams, "need --trials >= 0 and --threads >= 1");
        }
        SequenceSpec seq = parse_sequence(read_text_file(opts.file), opts.renormalize);
        VerifyReport report = verify(seq, method, opts.trials, opts.seed, {}, opts.threads);

        out << std::setprecision(3) << std::scientific;
        out << "sequence: n=" << seq.n << " k=" << seq.size() << (seq.faithful ? " faithful" : " unfaithful")
            << " method=" << to_string(method) << "\n";
        if (!report.admissibility.admissible) {
            out << "FAIL admissibility failing_index=" << report.admissibility.failing_index.value_or(0) << " ("
                << report.admissibility.reason << ")\n";
            return kExitNotAdmissible;
        }
        out << "PASS admissibility max_mismatch=" << report.admissibility.max_mismatch << "\n";
        for (const StepDiagnostics &d : report.steps) {
            out << "step " << d.step << " E=" << d.parallelity_e << " objective=" << d.objective
                << " fidelity=" << d.fidelity << "\n";
        }
        int failed = 0;
        for (const PropertyCheck &c : report.checks) {
            failed += c.passed ? 0 : 1;
            out << (c.passed ? "PASS " : "FAIL ") << c.name << " measured=" << c.measured << " tol=" << c.tolerance
                << "\n";
        }
        for (const std::string &e : report.errors) {
            err << "error: " << e << "\n";
        }
        out << "summary: " << report.checks.size() - failed << "/" << report.checks.size() << " properties passed";
        if (!report.errors.empty()) {
            out << ", " << report.errors.size() << " errors";
        }
        out << "\n";
        return report.passed() ? kExitOk : kExitFailure;
    });
}

int cmd_probe(const ProbeOptions &opts, std::ostream &out, std::ostream &err) {
    return guarded(err, [&]() {
        if (opts.scan < 0 || opts.shots < 0) {
            throw Error(ErrorCode::kBadParams, "need --scan >= 0 and --shots >= 0");
        }
        ParsedStates states = parse_states(read_text_file(opts.file), opts.renormalize);
        if (states.sigmas.size() != 1) {
            throw Error(ErrorCode::kParse, "sigmas: a probe file holds exactly one state");
        }
        const int n = states.n;
        ComplexMatrix vtilde = states.vtilde.value_or(ComplexMatrix::Identity(n, n));
        BlockState rho = encode(Subamplitude(states.sigmas.front(), vtilde));

        struct Row {
            std::string trial;
            ProbeResult probe;
        };
        std::vector<Row> rows;
        rows.push_back({"identity", probe_probability(rho, ComplexMatrix::Identity(n, n))});
        rows.push_back({"maximizer", probe_probability(rho, maximize_closed(rho.b01, Domain::kUnitary).vstar)});
        for (int i = 0; i < opts.scan; ++i) {
            rows.push_back({"random:" + std::to_string(i),
                            probe_probability(rho, random_unitary(n, derive_seed(opts.seed, i)))});
        }
        std::stable_sort(rows.begin(), rows.end(),
                         [](const Row &a, const Row &b) { return a.probe.probability > b.probe.probability; });

        Rng shots_rng(derive_seed(opts.seed, 0xD37EC7ULL));
        std::ostringstream csv;
        csv << "rank,trial,probability,formula_probability,shots,detections\n" << std::setprecision(17);
        for (size_t r = 0; r < rows.size(); ++r) {
            const ProbeResult &p = rows[r].probe;
            csv << r << ',' << rows[r].trial << ',' << p.probability << ',' << p.formula_probability << ','
                << opts.shots << ',';
            if (opts.shots > 0) {
                csv << sample_detections(p.probability, opts.shots, shots_rng);
            }
            csv << '\n';
        }
        emit(opts.out, csv.str(), out);
        return kExitOk;
    });
}

}  // namespace uhlmann::cli
