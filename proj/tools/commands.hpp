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

#ifndef UHLMANN_TOOLS_COMMANDS_HPP
#define UHLMANN_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace uhlmann::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;  // usage errors and unparseable input
inline constexpr int kExitNotAdmissible = 2;
inline constexpr int kExitFailure = 3;  // numerical errors, failed properties

struct HolonomyOptions {
    std::string file;
    std::string method = "closed";
    std::string initial = "identity";  // identity | random:<seed>
    std::string out;                   // empty: stdout
    std::string trace;                 // CSV of ascent iterates
    bool renormalize = false;
};

struct GenerateOptions {
    std::string kind = "faithful";  // faithful | equal-support | pure | path-sample
    int n = 2;
    int k = 4;
    std::optional<int> rank;
    std::uint64_t seed = 1;
    std::string out;
};

struct VerifyOptions {
    std::string file;
    std::string method = "closed";
    int trials = 3;
    std::uint64_t seed = 1;
    int threads = 1;
    bool renormalize = false;
};

struct ProbeOptions {
    std::string file;
    int scan = 16;
    std::uint64_t seed = 1;
    int shots = 0;
    std::string out;
    bool renormalize = false;
};

int cmd_holonomy(const HolonomyOptions &opts, std::ostream &out, std::ostream &err);
int cmd_generate(const GenerateOptions &opts, std::ostream &out, std::ostream &err);
int cmd_verify(const VerifyOptions &opts, std::ostream &out, std::ostream &err);
int cmd_probe(const ProbeOptions &opts, std::ostream &out, std::ostream &err);

/// Applies HOLONOMY_RANK_TOL if set. Returns false (with a message) on a bad value.
bool apply_rank_tol_env(std::ostream &err);

}  // namespace uhlmann::cli

#endif
