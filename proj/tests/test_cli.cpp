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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "commands.hpp"
#include "oracles.hpp"
#include "uhlmann/io.hpp"
#include "uhlmann/transport.hpp"

using namespace uhlmann;
using namespace uhlmann::cli;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("holonomy_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }
    std::string generate(const std::string &name, GenerateOptions opts) {
        opts.out = path(name);
        std::ostringstream out, err;
        EXPECT_EQ(cmd_generate(opts, out, err), kExitOk) << err.str();
        return opts.out;
    }

    fs::path dir_;
};

GenerateOptions gen(const std::string &kind, int n, int k, std::uint64_t seed, std::optional<int> rank = {}) {
    GenerateOptions o;
    o.kind = kind;
    o.n = n;
    o.k = k;
    o.seed = seed;
    o.rank = rank;
    return o;
}

std::vector<std::vector<std::string>> csv_rows(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream cells_in(line);
        std::string cell;
        while (std::getline(cells_in, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_F(CliTest, GenerateIsDeterministic) {
    std::string a = read_text_file(generate("a.json", gen("faithful", 2, 4, 7)));
    std::string b = read_text_file(generate("b.json", gen("faithful", 2, 4, 7)));
    EXPECT_EQ(a, b);
    std::string c = read_text_file(generate("c.json", gen("faithful", 2, 4, 8)));
    EXPECT_NE(a, c);
    for (const char *kind : {"equal-support", "pure", "path-sample"}) {
        std::string x = read_text_file(generate("x.json", gen(kind, 3, 4, 5)));
        std::string y = read_text_file(generate("y.json", gen(kind, 3, 4, 5)));
        EXPECT_EQ(x, y) << kind;
    }
}

TEST_F(CliTest, GeneratedKindsHaveTheAdvertisedShape) {
    SequenceSpec faithful = parse_sequence(read_text_file(generate("f.json", gen("faithful", 3, 5, 1))));
    EXPECT_TRUE(faithful.faithful);
    EXPECT_EQ(faithful.size(), 5);

    SequenceSpec eq = parse_sequence(read_text_file(generate("e.json", gen("equal-support", 4, 6, 2, 2))));
    EXPECT_TRUE(is_admissible(eq).admissible);
    for (const DensityMatrix &s : eq.sigmas) {
        EXPECT_EQ(s.rank(), 2);
        EXPECT_TRUE(projectors_equal(s.support_projector(), eq.sigmas.front().support_projector()));
    }
    for (int j = 0; j + 1 < eq.size(); ++j) {
        EXPECT_GE(fidelity(eq.sigmas[j + 1], eq.sigmas[j]), 0.05);
    }

    SequenceSpec path = parse_sequence(read_text_file(generate("p.json", gen("path-sample", 3, 6, 3))));
    EXPECT_TRUE(path.faithful);
    EXPECT_EQ(path.labels.front(), "s=0");
    EXPECT_EQ(path.labels.back(), "s=1");
    // Unitary orbit: every sample has the spectrum of the first.
    for (const DensityMatrix &s : path.sigmas) {
        EXPECT_LT((s.spectral().eigenvalues - path.sigmas.front().spectral().eigenvalues).norm(), 1e-12);
    }
}

TEST_F(CliTest, PureSequenceHasPancharatnamHolonomy) {
    SequenceSpec seq = parse_sequence(read_text_file(generate("pure.json", gen("pure", 3, 5, 4))));
    ASSERT_TRUE(is_admissible(seq).admissible);
    std::vector<oracle::Vector> psis;
    for (const DensityMatrix &s : seq.sigmas) {
        oracle::Spectrum sp = oracle::jacobi(s.matrix());
        int top = static_cast<int>(std::max_element(sp.values.begin(), sp.values.end()) - sp.values.begin());
        psis.push_back(sp.vectors.col(top));
    }
    HolonomyResult r = analytic_holonomy(seq);
    EXPECT_EQ(numerical_rank(r.u_uhl), 1);
    Complex phase = psis.back().dot(r.u_uhl * psis.front());
    EXPECT_NEAR(std::abs(phase), 1.0, 1e-8);
    EXPECT_LT((r.u_uhl - oracle::pancharatnam(psis)).norm(), 1e-8);
}

TEST_F(CliTest, GenerateRejectsInconsistentParameters) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_generate(gen("pure", 3, 4, 1, 2), out, err), kExitUsage);
    EXPECT_EQ(cmd_generate(gen("equal-support", 3, 4, 1, 4), out, err), kExitUsage);
    EXPECT_EQ(cmd_generate(gen("faithful", 3, 4, 1, 2), out, err), kExitUsage);
    EXPECT_EQ(cmd_generate(gen("faithful", 3, 1, 1), out, err), kExitUsage);
    EXPECT_EQ(cmd_generate(gen("spiral", 3, 4, 1), out, err), kExitUsage);
    EXPECT_TRUE(out.str().empty());
}

TEST_F(CliTest, HolonomyOfConstantPairIsIdentity) {
    DensityMatrix s = random_density(2, 2, 5);
    write_text_file(path("c.json"), emit_sequence(SequenceSpec::make({s, s})));
    for (const char *method : {"analytic", "closed", "ascent"}) {
        HolonomyOptions o;
        o.file = path("c.json");
        o.method = method;
        o.out = path("r.json");
        std::ostringstream out, err;
        ASSERT_EQ(cmd_holonomy(o, out, err), kExitOk) << err.str();
        RunReport r = parse_report(read_text_file(o.out));
        EXPECT_EQ(r.method, method);
        EXPECT_LT((r.holonomy - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-8);
    }
}

TEST_F(CliTest, AscentAgreesWithAnalytic) {
    std::string file = generate("f.json", gen("faithful", 3, 5, 6));
    HolonomyOptions o;
    o.file = file;
    o.method = "ascent";
    o.out = path("ascent.json");
    o.trace = path("trace.csv");
    std::ostringstream out, err;
    ASSERT_EQ(cmd_holonomy(o, out, err), kExitOk) << err.str();
    RunReport ascent = parse_report(read_text_file(o.out));
    ASSERT_TRUE(ascent.discrepancy.has_value());
    EXPECT_LE(*ascent.discrepancy, 1e-6);
    EXPECT_EQ(ascent.steps.size(), 4u);

    o.method = "analytic";
    o.out = path("analytic.json");
    o.trace.clear();
    ASSERT_EQ(cmd_holonomy(o, out, err), kExitOk);
    RunReport analytic = parse_report(read_text_file(o.out));
    EXPECT_LE(frobenius_distance(ascent.holonomy, analytic.holonomy), 1e-6);

    auto rows = csv_rows(read_text_file(path("trace.csv")));
    ASSERT_GT(rows.size(), 1u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"step", "iteration", "objective"}));
}

TEST_F(CliTest, HolonomyWithRandomInitialAndStdout) {
    std::string file = generate("f.json", gen("faithful", 2, 3, 9));
    HolonomyOptions o;
    o.file = file;
    o.initial = "random:12";
    std::ostringstream out, err;
    ASSERT_EQ(cmd_holonomy(o, out, err), kExitOk) << err.str();
    RunReport r = parse_report(out.str());
    EXPECT_EQ(r.initial, "random:12");
    EXPECT_LE(r.discrepancy.value_or(1.0), 1e-6);
    o.initial = "random:x";
    EXPECT_EQ(cmd_holonomy(o, out, err), kExitUsage);
    o.initial = "haar";
    EXPECT_EQ(cmd_holonomy(o, out, err), kExitUsage);
}

TEST_F(CliTest, MalformedInputExitsOneAndNamesPath) {
    write_text_file(path("bad.json"), R"({"n": 2, "sigmas": [[[[1,0],[0,0]],[[0,0],[0,0]]], [[[1,0],[0,0]],[[0,0],[0,null]]]]})");
    HolonomyOptions o;
    o.file = path("bad.json");
    std::ostringstream out, err;
    EXPECT_EQ(cmd_holonomy(o, out, err), kExitUsage);
    EXPECT_NE(err.str().find("sigmas[1][1][1][1]"), std::string::npos) << err.str();
    EXPECT_EQ(err.str().find("[["), std::string::npos);

    o.file = path("missing.json");
    std::ostringstream err2;
    EXPECT_EQ(cmd_holonomy(o, out, err2), kExitUsage);
}

TEST_F(CliTest, InadmissibleExitsTwo) {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a(0, 0) = 1.0;
    ComplexMatrix c = ComplexMatrix::Zero(3, 3);
    c(1, 1) = 1.0;
    write_text_file(path("inadm.json"), emit_sequence(SequenceSpec::make({DensityMatrix(a),
                                                                          DensityMatrix::maximally_mixed(3),
                                                                          DensityMatrix(c)})));
    HolonomyOptions o;
    o.file = path("inadm.json");
    o.out = path("r.json");
    std::ostringstream out, err;
    EXPECT_EQ(cmd_holonomy(o, out, err), kExitNotAdmissible);
    RunReport r = parse_report(read_text_file(o.out));
    EXPECT_FALSE(r.admissible);
    EXPECT_EQ(r.failing_index.value_or(-1), 1);

    VerifyOptions v;
    v.file = o.file;
    std::ostringstream vout, verr;
    EXPECT_EQ(cmd_verify(v, vout, verr), kExitNotAdmissible);
    EXPECT_NE(vout.str().find("FAIL admissibility failing_index=1"), std::string::npos);
}

TEST_F(CliTest, VerifyPassesOnGeneratedFiles) {
    for (const char *kind : {"faithful", "equal-support", "pure", "path-sample"}) {
        VerifyOptions v;
        v.file = generate("s.json", gen(kind, 4, 4, 11));
        v.trials = 4;
        v.threads = 2;
        for (const char *method : {"closed", "ascent"}) {
            v.method = method;
            std::ostringstream out, err;
            EXPECT_EQ(cmd_verify(v, out, err), kExitOk) << kind << " " << method << "\n" << out.str() << err.str();
            EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
            EXPECT_NE(out.str().find("PASS oracle_equivalence"), std::string::npos);
            EXPECT_NE(out.str().find("PASS gauge_invariance"), std::string::npos);
        }
    }
}

TEST_F(CliTest, ProbeSaturatesOnMaximallyMixedState) {
    for (int n = 1; n <= 3; ++n) {
        std::ostringstream doc;
        doc << std::setprecision(17);
        doc << "{\"n\": " << n << ", \"sigmas\": [[";
        for (int i = 0; i < n; ++i) {
            doc << (i ? "," : "") << "[";
            for (int j = 0; j < n; ++j) {
                doc << (j ? "," : "") << "[" << (i == j ? 1.0 / n : 0.0) << ",0]";
            }
            doc << "]";
        }
        doc << "]]}";
        write_text_file(path("probe.json"), doc.str());
        ProbeOptions p;
        p.file = path("probe.json");
        p.scan = 12;
        p.shots = 50;
        std::ostringstream out, err;
        ASSERT_EQ(cmd_probe(p, out, err), kExitOk) << err.str();
        auto rows = csv_rows(out.str());
        ASSERT_EQ(rows.size(), 15u);
        EXPECT_EQ(rows[0], (std::vector<std::string>{"rank", "trial", "probability", "formula_probability", "shots",
                                                     "detections"}));
        EXPECT_NEAR(std::stod(rows[1][2]), 1.0, 1e-12);
        EXPECT_TRUE(rows[1][1] == "identity" || rows[1][1] == "maximizer");
        EXPECT_EQ(rows[1][5], "50");
        for (size_t r = 2; r < rows.size(); ++r) {
            EXPECT_GE(std::stod(rows[r - 1][2]), std::stod(rows[r][2]));
        }
    }
}

TEST_F(CliTest, ProbeRequiresSingleState) {
    ProbeOptions p;
    p.file = generate("two.json", gen("faithful", 2, 2, 1));
    std::ostringstream out, err;
    EXPECT_EQ(cmd_probe(p, out, err), kExitUsage);
}

TEST_F(CliTest, RankToleranceFromEnvironment) {
    const double saved = rank_tol();
    std::ostringstream err;
    ::setenv("HOLONOMY_RANK_TOL", "1e-6", 1);
    EXPECT_TRUE(apply_rank_tol_env(err));
    EXPECT_EQ(rank_tol(), 1e-6);
    ::setenv("HOLONOMY_RANK_TOL", "tiny", 1);
    EXPECT_FALSE(apply_rank_tol_env(err));
    ::setenv("HOLONOMY_RANK_TOL", "-1", 1);
    EXPECT_FALSE(apply_rank_tol_env(err));
    ::unsetenv("HOLONOMY_RANK_TOL");
    EXPECT_TRUE(apply_rank_tol_env(err));
    set_rank_tol(saved);
}
