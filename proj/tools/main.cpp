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

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

const char *kFooter = R"(Exit codes:
  0  success
  1  usage error or unparseable input file
  2  sequence is not admissible
  3  numerical failure or a verified property failed

Environment:
  HOLONOMY_RANK_TOL  relative threshold below which singular values and
                     eigenvalues count as zero (default 1e-9)

CSV outputs:
  holonomy --trace   step,iteration,objective
                     one row per ascent iterate; objective is
                     2N (E - 1/2) for the encoded pair of that step
  probe              rank,trial,probability,formula_probability,shots,detections
                     sorted by probability, highest first; trial is
                     identity, maximizer or random:<i>; detections is empty
                     unless --shots is given)";

}  // namespace

int main(int argc, char **argv) {
    using namespace uhlmann::cli;

    CLI::App app{"Uhlmann holonomy of a discrete sequence of density matrices"};
    app.footer(kFooter);
    app.require_subcommand(1);

    HolonomyOptions hol;
    CLI::App *hol_cmd = app.add_subcommand("holonomy", "Compute the holonomy of a sequence file");
    hol_cmd->add_option("file", hol.file, "Sequence JSON file")->required();
    hol_cmd->add_option("--method", hol.method, "analytic | closed | ascent")
        ->check(CLI::IsMember({"analytic", "closed", "ascent"}));
    hol_cmd->add_option("--initial", hol.initial, "Initial amplitude: identity | random:<seed>");
    hol_cmd->add_option("--out", hol.out, "Report JSON path (default: stdout)");
    hol_cmd->add_option("--trace", hol.trace, "Write ascent iterates as CSV");
    hol_cmd->add_flag("--renormalize", hol.renormalize, "Divide each state by its trace");

    GenerateOptions gen;
    int gen_rank = 0;
    CLI::App *gen_cmd = app.add_subcommand("generate", "Write a seeded random sequence file");
    gen_cmd->add_option("--kind", gen.kind, "faithful | equal-support | pure | path-sample")
        ->check(CLI::IsMember({"faithful", "equal-support", "pure", "path-sample"}));
    gen_cmd->add_option("--n", gen.n, "Hilbert space dimension");
    gen_cmd->add_option("--k", gen.k, "Number of states");
    CLI::Option *rank_opt = gen_cmd->add_option("--rank", gen_rank, "State rank");
    gen_cmd->add_option("--seed", gen.seed, "Master seed");
    gen_cmd->add_option("--out", gen.out, "Output path (default: stdout)");

    VerifyOptions ver;
    CLI::App *ver_cmd = app.add_subcommand("verify", "Check the operational route against the analytic one");
    ver_cmd->add_option("file", ver.file, "Sequence JSON file")->required();
    ver_cmd->add_option("--method", ver.method, "closed | ascent")->check(CLI::IsMember({"closed", "ascent"}));
    ver_cmd->add_option("--trials", ver.trials, "Random initial amplitudes for the gauge check");
    ver_cmd->add_option("--seed", ver.seed, "Master seed for the gauge trials");
    ver_cmd->add_option("--threads", ver.threads, "Worker threads for the gauge trials");
    ver_cmd->add_flag("--renormalize", ver.renormalize, "Divide each state by its trace");

    ProbeOptions probe;
    CLI::App *probe_cmd = app.add_subcommand("probe", "Scan the detection probability over trial unitaries");
    probe_cmd->add_option("file", probe.file, "JSON file with one state and optional \"vtilde\"")->required();
    probe_cmd->add_option("--scan", probe.scan, "Number of random trial unitaries");
    probe_cmd->add_option("--seed", probe.seed, "Seed for trial unitaries and shot sampling");
    probe_cmd->add_option("--shots", probe.shots, "Sample detections with this many shots per trial");
    probe_cmd->add_option("--out", probe.out, "CSV path (default: stdout)");
    probe_cmd->add_flag("--renormalize", probe.renormalize, "Divide the state by its trace");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (!apply_rank_tol_env(std::cerr)) {
        return kExitUsage;
    }
    if (*rank_opt) {
        gen.rank = gen_rank;
    }

    if (*hol_cmd) {
        return cmd_holonomy(hol, std::cout, std::cerr);
    }
    if (*gen_cmd) {
        return cmd_generate(gen, std::cout, std::cerr);
    }
    if (*ver_cmd) {
        return cmd_verify(ver, std::cout, std::cerr);
    }
    return cmd_probe(probe, std::cout, std::cerr);
}
