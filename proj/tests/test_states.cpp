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
#include "uhlmann/states.hpp"

using namespace uhlmann;

namespace {

double min_eig_oracle(const ComplexMatrix &m) {
    std::vector<double> v = oracle::jacobi(m).values;
    return *std::min_element(v.begin(), v.end());
}

template <typename F>
ErrorCode code_of(F f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    return ErrorCode::kParse;  // sentinel: no error raised
}

ComplexMatrix diag2(Complex a, Complex b) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST(DensityMatrix, ValidatesInput) {
    EXPECT_EQ(code_of([] { DensityMatrix(ComplexMatrix::Zero(2, 3)); }), ErrorCode::kDimensionMismatch);
    EXPECT_EQ(code_of([] { DensityMatrix(diag2(0.5, 0.6)); }), ErrorCode::kInvalidState);
    EXPECT_EQ(code_of([] { DensityMatrix(diag2(1.2, -0.2)); }), ErrorCode::kNotPsd);
    ComplexMatrix skew = diag2(0.5, 0.5);
    skew(0, 1) = 0.1;
    EXPECT_EQ(code_of([&] { DensityMatrix d(skew); }), ErrorCode::kNotHermitian);
}

TEST(DensityMatrix, CachesSqrtAndSupport) {
    DensityMatrix s(diag2(1.0, 0.0));
    EXPECT_EQ(s.rank(), 1);
    EXPECT_FALSE(s.is_faithful());
    EXPECT_LT((s.support_projector() - diag2(1.0, 0.0)).norm(), 1e-15);
    DensityMatrix r = random_density(4, 4, 3);
    EXPECT_TRUE(r.is_faithful());
    EXPECT_LT((r.sqrt() - oracle::sqrt_psd(r.matrix())).norm(), 1e-10);
}

TEST(RandomStates, RankAndDeterminism) {
    DensityMatrix full = random_density(3, 3, 9);
    EXPECT_LT((full.support_projector() - ComplexMatrix::Identity(3, 3)).norm(), 1e-12);
    DensityMatrix pure = random_density(3, 1, 9);
    EXPECT_LT((pure.matrix() * pure.matrix() - pure.matrix()).norm(), 1e-10);
    EXPECT_EQ(random_density(4, 2, 21).matrix(), random_density(4, 2, 21).matrix());
    EXPECT_EQ(random_unitary(4, 21), random_unitary(4, 21));
    EXPECT_NE(random_unitary(4, 21), random_unitary(4, 22));
    EXPECT_EQ(code_of([] { random_density(3, 4, 1); }), ErrorCode::kBadRank);
    EXPECT_EQ(code_of([] { random_density(3, 0, 1); }), ErrorCode::kBadRank);
}

TEST(RandomStates, SpectrumFloorAndSupport) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        DensityMatrix s = random_density(4, 3, seed);
        EXPECT_EQ(s.rank(), 3);
        const RealVector &lambda = s.spectral().eigenvalues;
        EXPECT_GE(lambda(1), 0.01 / 4 - 1e-12);
        EXPECT_NEAR(lambda.sum(), 1.0, 1e-12);
    }
    ComplexMatrix basis = random_unitary(4, 5).leftCols(2);
    DensityMatrix on = random_density_on_support(basis, 6);
    EXPECT_LT((on.support_projector() - basis * basis.adjoint()).norm(), 1e-10);
}

TEST(RandomStates, ContractionHasNormAtMostOne) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        EXPECT_LE(spectral_norm(random_contraction(3, seed)), 1.0 + 1e-12);
    }
}

TEST(Subamplitude, RejectsExpansiveMaps) {
    DensityMatrix s = DensityMatrix::maximally_mixed(2);
    EXPECT_EQ(code_of([&] { Subamplitude(s, 1.1 * ComplexMatrix::Identity(2, 2)); }), ErrorCode::kNotContraction);
    EXPECT_EQ(code_of([&] { Subamplitude(s, ComplexMatrix::Identity(3, 3)); }), ErrorCode::kDimensionMismatch);
    EXPECT_TRUE(Subamplitude(s, random_unitary(2, 1)).is_amplitude());
    EXPECT_FALSE(Subamplitude(s, 0.5 * ComplexMatrix::Identity(2, 2)).is_amplitude());
}

TEST(Encode, MaximallyMixedGivesQuarterIdentityBlocks) {
    BlockState rho = encode(DensityMatrix::maximally_mixed(2), ComplexMatrix::Identity(2, 2));
    ComplexMatrix quarter = 0.25 * ComplexMatrix::Identity(2, 2);
    EXPECT_LT((rho.b00 - quarter).norm(), 1e-15);
    EXPECT_LT((rho.b01 - quarter).norm(), 1e-15);
    EXPECT_LT((rho.b10() - quarter).norm(), 1e-15);
    EXPECT_LT((rho.b11 - quarter).norm(), 1e-15);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-15);
}

TEST(Encode, PureStateOffDiagonalBlock) {
    BlockState rho = encode(DensityMatrix(diag2(1.0, 0.0)), ComplexMatrix::Identity(2, 2));
    EXPECT_LT((rho.b01 - diag2(1.0, 0.0) / (2.0 * std::sqrt(2.0))).norm(), 1e-15);
}

TEST(Encode, MatchesOracleAndIsPositive) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int n = 2 + static_cast<int>(seed % 3);
        DensityMatrix s = random_density(n, n, seed);
        ComplexMatrix v = random_unitary(n, seed + 100);
        BlockState rho = encode(s, v);
        ComplexMatrix ref = oracle::encode(s.matrix(), v);
        EXPECT_LT((rho.assembled() - ref).norm(), 1e-10);
        EXPECT_GE(min_eig_oracle(rho.assembled()), -1e-10);
        EXPECT_NO_THROW(validate_block_state(rho));
        EXPECT_EQ(BlockState::from_assembled(rho.assembled()).b01, rho.b01);
    }
}

TEST(Membership, RecoversCanonicalVtilde) {
    DensityMatrix s = random_density(3, 3, 31);
    ComplexMatrix v = random_contraction(3, 32);
    BlockState rho = encode(s, v);
    // D(sigma, W) has marginals sigma and I/N.
    ComplexMatrix got = check_membership(rho, s, DensityMatrix::maximally_mixed(3));
    EXPECT_LT((got - v).norm(), 1e-9);
}

TEST(Membership, ProductStateHasZeroVtilde) {
    DensityMatrix s0 = random_density(2, 2, 33);
    DensityMatrix s1 = random_density(2, 1, 34);
    BlockState rho;
    rho.n = 2;
    rho.b00 = 0.5 * s0.matrix();
    rho.b11 = 0.5 * s1.matrix();
    rho.b01 = ComplexMatrix::Zero(2, 2);
    EXPECT_LT(check_membership(rho, s0, s1).norm(), 1e-15);
}

TEST(Membership, Violations) {
    DensityMatrix s0(diag2(1.0, 0.0));
    DensityMatrix s1 = DensityMatrix::maximally_mixed(2);
    BlockState rho;
    rho.n = 2;
    rho.b00 = 0.5 * s0.matrix();
    rho.b11 = 0.5 * s1.matrix();
    rho.b01 = ComplexMatrix::Zero(2, 2);
    rho.b01(1, 0) = 0.1;  // row outside R(sigma0)
    EXPECT_EQ(code_of([&] { check_membership(rho, s0, s1); }), ErrorCode::kNotInQ);
    rho.b01 = diag2(0.5, 0.0);  // V~ = 2 sqrt(2) > 1
    EXPECT_EQ(code_of([&] { check_membership(rho, s0, s1); }), ErrorCode::kNotInQ);
    EXPECT_EQ(code_of([&] { check_membership(rho, s1, s1); }), ErrorCode::kMarginalMismatch);
}

TEST(BlockPositivity, Examples) {
    ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
    EXPECT_TRUE(block_positivity(half, half, half));
    ComplexMatrix c = ComplexMatrix::Zero(2, 2);
    c(0, 1) = 0.9;
    ComplexMatrix a = diag2(1.0, 0.0);
    ComplexMatrix b = ComplexMatrix::Identity(2, 2);
    EXPECT_EQ(block_positivity(a, b, c), min_eig_oracle(assemble_blocks(a, b, c)) >= -1e-9);
    EXPECT_TRUE(block_positivity(a, b, ComplexMatrix::Zero(2, 2)));
    EXPECT_FALSE(block_positivity(a, b, 2.0 * c));
}

TEST(BlockPositivity, AgreesWithEigenvalueRoute) {
    Rng rng(40);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 2;
        ComplexMatrix ga(n, n), gb(n, n), c(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                ga(i, j) = rng.complex_normal();
                gb(i, j) = rng.complex_normal();
                c(i, j) = 0.5 * rng.complex_normal();
            }
        }
        if (trial % 3 == 0) {
            ga.col(0).setZero();  // rank-deficient A
        }
        ComplexMatrix a = ga * ga.adjoint();
        ComplexMatrix b = gb * gb.adjoint();
        double lo = min_eig_oracle(assemble_blocks(a, b, c));
        if (std::abs(lo) < 1e-6) {
            continue;  // too close to the boundary to call
        }
        EXPECT_EQ(block_positivity(a, b, c), lo > 0.0) << "trial " << trial;
    }
}
