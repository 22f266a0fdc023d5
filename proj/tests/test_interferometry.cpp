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

#include "oracles.hpp"
#include "uhlmann/error.hpp"
#include "uhlmann/interferometry.hpp"

using namespace uhlmann;

namespace {

struct Pair {
    DensityMatrix sa, sb;
    ComplexMatrix va, vb;
    BlockState ra, rb;
};

Pair random_pair(std::uint64_t seed) {
    Rng rng(seed);
    const int n = 1 + static_cast<int>(rng.next_u64() % 4);
    const int rank_a = 1 + static_cast<int>(rng.next_u64() % n);
    const int rank_b = 1 + static_cast<int>(rng.next_u64() % n);
    DensityMatrix sa = random_density(n, rank_a, derive_seed(seed, 1));
    DensityMatrix sb = random_density(n, rank_b, derive_seed(seed, 2));
    ComplexMatrix va = random_contraction(n, derive_seed(seed, 3));
    ComplexMatrix vb = random_unitary(n, derive_seed(seed, 4));
    BlockState ra = encode(sa, va);
    BlockState rb = encode(sb, vb);
    return {sa, sb, va, vb, ra, rb};
}

double oracle_e(const ComplexMatrix &rb, const ComplexMatrix &ra) {
    const int n = static_cast<int>(ra.rows()) / 2;
    return (oracle::z_operator(n) * oracle::kron(rb, ra)).trace().real();
}

}  // namespace

TEST(ZOperator, SingleLevelIsPathSwap) {
    ZOperator z = build_z(1);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = 1.0;
    expected(3, 3) = 1.0;
    expected(1, 2) = 1.0;
    expected(2, 1) = 1.0;
    EXPECT_EQ(z.matrix, expected);
}

TEST(ZOperator, MatchesDirectConstruction) {
    for (int n = 1; n <= 4; ++n) {
        ZOperator z = build_z(n);
        const int d = 4 * n * n;
        ASSERT_EQ(static_cast<int>(z.permutation.size()), d);
        EXPECT_EQ(z.matrix, oracle::z_operator(n)) << "n = " << n;
        EXPECT_EQ(z.matrix * z.matrix, ComplexMatrix::Identity(d, d));
        EXPECT_EQ(z.matrix, z.matrix.adjoint());
        EXPECT_EQ(z.matrix.trace().real(), 2.0 * n * n);
    }
}

TEST(Parallelity, OrthogonalAmplitudesGiveOneHalf) {
    DensityMatrix s = DensityMatrix::maximally_mixed(2);
    ComplexMatrix phase = ComplexMatrix::Zero(2, 2);
    phase(0, 0) = Complex(0.0, 1.0);
    phase(1, 1) = Complex(0.0, -1.0);
    BlockState a = encode(s, ComplexMatrix::Identity(2, 2));
    BlockState b = encode(s, phase);
    EXPECT_NEAR(parallelity_e(b, a), 0.5, 1e-15);
    EXPECT_NEAR(parallelity_circuit(b, a), 0.75, 1e-15);
}

TEST(Parallelity, IdenticalAmplitudeStates) {
    DensityMatrix s = DensityMatrix::maximally_mixed(2);
    BlockState a = encode(s, ComplexMatrix::Identity(2, 2));
    EXPECT_NEAR(parallelity_e(a, a), 0.5 + 1.0 / 4.0, 1e-15);
    EXPECT_NEAR(parallelity_circuit(a, a), 0.875, 1e-15);
}

TEST(Parallelity, RoutesAgreeOnRandomPairs) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Pair p = random_pair(seed);
        const int n = p.sa.dim();
        double e_perm = parallelity_e(p.rb, p.ra);
        double e_blocks = parallelity_e_blocks(p.rb, p.ra);
        double e_ref = oracle_e(p.rb.assembled(), p.ra.assembled());
        EXPECT_NEAR(e_perm, e_blocks, 1e-12);
        EXPECT_NEAR(e_perm, e_ref, 1e-12);

        ComplexMatrix wa = oracle::sqrt_psd(p.sa.matrix()) * p.va;
        ComplexMatrix wb = oracle::sqrt_psd(p.sb.matrix()) * p.vb;
        double formula = 0.75 + oracle::overlap(wb, wa) / (4.0 * n);
        EXPECT_NEAR(parallelity_circuit(p.rb, p.ra), formula, 1e-10);
        EXPECT_NEAR(e_perm, 0.5 + oracle::overlap(wb, wa) / (2.0 * n), 1e-10);
    }
}

TEST(Probe, MaximallyMixedSaturates) {
    for (int n = 1; n <= 4; ++n) {
        BlockState rho = encode(DensityMatrix::maximally_mixed(n), ComplexMatrix::Identity(n, n));
        ProbeResult r = probe_probability(rho, ComplexMatrix::Identity(n, n));
        EXPECT_NEAR(r.probability, 1.0, 1e-14);
        EXPECT_NEAR(r.formula_probability, 1.0, 1e-14);
    }
}

TEST(Probe, OrthogonalTrialGivesOneHalf) {
    BlockState rho = encode(DensityMatrix::maximally_mixed(2), ComplexMatrix::Identity(2, 2));
    ComplexMatrix u = ComplexMatrix::Zero(2, 2);
    u(0, 0) = Complex(0.0, 1.0);
    u(1, 1) = Complex(0.0, -1.0);
    EXPECT_NEAR(probe_probability(rho, u).probability, 0.5, 1e-15);
}

TEST(Probe, CircuitMatchesFormula) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Pair p = random_pair(seed + 1000);
        const int n = p.sa.dim();
        ComplexMatrix u = random_unitary(n, derive_seed(seed, 9));
        ProbeResult r = probe_probability(p.ra, u);
        ComplexMatrix w = oracle::sqrt_psd(p.sa.matrix()) * p.va;
        double formula = 0.5 + (w * u.adjoint()).trace().real() / (2.0 * std::sqrt(static_cast<double>(n)));
        EXPECT_NEAR(r.probability, formula, 1e-10);
        EXPECT_NEAR(r.formula_probability, formula, 1e-10);
    }
}

TEST(Probe, RejectsNonUnitaryTrial) {
    BlockState rho = encode(DensityMatrix::maximally_mixed(2), ComplexMatrix::Identity(2, 2));
    try {
        probe_probability(rho, 0.5 * ComplexMatrix::Identity(2, 2));
        FAIL() << "expected NotUnitary";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kNotUnitary);
    }
}

TEST(PathUnitary, MatchesConjugation) {
    Pair p = random_pair(77);
    const int n = p.sa.dim();
    ComplexMatrix u = random_unitary(n, 78);
    ComplexMatrix big = ComplexMatrix::Identity(2 * n, 2 * n);
    big.bottomRightCorner(n, n) = u;
    BlockState out = apply_path_unitary(p.ra, u);
    EXPECT_LT((out.assembled() - big * p.ra.assembled() * big.adjoint()).norm(), 1e-14);
}

TEST(Readout, RecoversUnitaryOfFaithfulAmplitude) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int n = 2 + static_cast<int>(seed % 3);
        DensityMatrix s = random_density(n, n, seed);
        ComplexMatrix v = random_unitary(n, seed + 50);
        ReadoutResult r = readout_unitary(encode(s, v), ComplexMatrix::Identity(n, n));
        EXPECT_LT((r.unitary - v).norm(), 1e-9);
        EXPECT_TRUE(r.verified);
        ProbeResult best = probe_probability(encode(s, v), r.completion);
        EXPECT_NEAR(best.probability, r.max_probability, 1e-12);
    }
}

TEST(Readout, RankDeficientSupportGivesPartialIsometry) {
    DensityMatrix s = random_density(3, 2, 61);
    ComplexMatrix v = random_unitary(3, 62);
    const ComplexMatrix &p = s.support_projector();
    ReadoutResult r = readout_unitary(encode(s, v), p);
    EXPECT_TRUE(is_partial_isometry(r.unitary));
    EXPECT_LT((r.unitary * r.unitary.adjoint() - p).norm(), 1e-9);
    EXPECT_LT((r.unitary - p * v).norm(), 1e-9);
    EXPECT_TRUE(is_unitary(r.completion));
}

TEST(Readout, DegenerateWhenOffDiagonalVanishes) {
    BlockState rho = encode(DensityMatrix::maximally_mixed(2), ComplexMatrix::Zero(2, 2));
    try {
        readout_unitary(rho, ComplexMatrix::Identity(2, 2));
        FAIL() << "expected DegenerateReadout";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kDegenerateReadout);
    }
}

TEST(Filter, IdentityLeavesStateUnchanged) {
    Pair p = random_pair(80);
    const int n = p.sa.dim();
    BlockState f = filter_state(p.ra, ComplexMatrix::Identity(n, n));
    EXPECT_LT((f.assembled() - p.ra.assembled()).norm(), 1e-14);
}

TEST(Filter, ProjectsPathZeroAndRenormalizes) {
    DensityMatrix s = random_density(3, 3, 81);
    BlockState rho = encode(s, random_unitary(3, 82));
    ComplexMatrix proj = ComplexMatrix::Zero(3, 3);
    proj(0, 0) = 1.0;
    proj(1, 1) = 1.0;
    BlockState f = filter_state(rho, proj);
    ComplexMatrix big = ComplexMatrix::Identity(6, 6);
    big.topLeftCorner(3, 3) = proj;
    ComplexMatrix ref = big * rho.assembled() * big;
    ref /= ref.trace().real();
    EXPECT_LT((f.assembled() - ref).norm(), 1e-14);
    EXPECT_NEAR(f.trace(), 1.0, 1e-14);
}

TEST(Filter, VanishingBranch) {
    BlockState rho;
    rho.n = 2;
    rho.b00 = ComplexMatrix::Zero(2, 2);
    rho.b00(0, 0) = 1.0;
    rho.b01 = ComplexMatrix::Zero(2, 2);
    rho.b11 = ComplexMatrix::Zero(2, 2);
    ComplexMatrix proj = ComplexMatrix::Zero(2, 2);
    proj(1, 1) = 1.0;
    try {
        filter_state(rho, proj);
        FAIL() << "expected VanishingFilter";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kVanishingFilter);
    }
}

TEST(Sampling, DetectionFrequencyTracksProbability) {
    Rng rng(90);
    const int shots = 100000;
    int hits = sample_detections(0.3, shots, rng);
    double sd = std::sqrt(0.3 * 0.7 / shots);
    EXPECT_NEAR(static_cast<double>(hits) / shots, 0.3, 5 * sd);
    EXPECT_EQ(sample_detections(1.0, 10, rng), 10);
    EXPECT_EQ(sample_detections(0.0, 10, rng), 0);
}
