// Copyright 2026 The rmtoolbox Authors
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

#include "rmt/invariants.h"

#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "rmt/bloch.h"
#include "rmt/errors.h"
#include "rmt/protocol.h"
#include "rmt/states.h"
#include "test_util.h"

namespace rmt {
namespace {

RMatrix random_orthogonal(int n, testing::TestRng &rng) {
    std::normal_distribution<double> nd;
    RMatrix g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) g(i, j) = nd(rng);
    }
    Eigen::HouseholderQR<RMatrix> qr(g);
    return qr.householderQ();
}

DensityMatrix bell_state() {
    CVector v = CVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return DensityMatrix(CMatrix(v * v.adjoint()), SubsystemShape::uniform(2, 2));
}

DensityMatrix as_density(const PureState &p) { return DensityMatrix(p.projector(), p.shape()); }

TEST(Moments, ZeroCorrelations) {
    MomentPair m = moments_from_T(RMatrix::Zero(8, 8), 3);
    EXPECT_EQ(m.r2, 0.0);
    EXPECT_EQ(m.r4, 0.0);
}

TEST(Moments, ChessboardBaseline) {
    MomentPair m = moments_from_T(bloch_decompose(chessboard_state()).T, 3);
    EXPECT_NEAR(m.r2, 0.3125, 1e-10);
    EXPECT_NEAR(m.r4, 0.045573, 1e-6);
}

TEST(Moments, PureProductIsOne) {
    for (int d : {2, 3}) {
        SubsystemShape shape = SubsystemShape::uniform(2, d);
        MomentPair m = moments_from_T(bloch_decompose(as_density(basis_state(shape, {0, 0}))).T, d);
        EXPECT_NEAR(m.r2, 1.0, 1e-12);
        EXPECT_NEAR(m.r4, 1.0, 1e-12);
    }
}

TEST(Moments, OrthogonalInvarianceAndSingularValueForm) {
    testing::TestRng rng(31);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 20; ++trial) {
        RMatrix T(8, 8);
        for (int i = 0; i < 64; ++i) T(i / 8, i % 8) = 0.3 * nd(rng);
        RMatrix rotated = random_orthogonal(8, rng) * T * random_orthogonal(8, rng);
        MomentPair a = moments_from_T(T, 3), b = moments_from_T(rotated, 3);
        MomentPair c = moments_from_singular_values(singular_values(T), 3);
        EXPECT_NEAR(a.r2, b.r2, 1e-12);
        EXPECT_NEAR(a.r4, b.r4, 1e-12);
        EXPECT_NEAR(a.r2, c.r2, 1e-12);
        EXPECT_NEAR(a.r4, c.r4, 1e-12);
    }
}

TEST(Moments, HomogeneousUnderScaling) {
    testing::TestRng rng(32);
    DensityMatrix rho = testing::random_state(SubsystemShape::uniform(2, 3), rng, 2);
    RMatrix T = bloch_decompose(rho).T;
    MomentPair a = moments_from_T(T, 3), b = moments_from_T(0.5 * T, 3);
    EXPECT_NEAR(b.r2, a.r2 / 4.0, 1e-14);
    EXPECT_NEAR(b.r4, a.r4 / 16.0, 1e-14);
}

TEST(Moments, HaarAverageSelectsHomogeneousForm) {
    DensityMatrix rho = chessboard_state();
    RMatrix T = bloch_decompose(rho).T;
    HaarOracleResult h = haar_moment_oracle(rho, 20000, 7);
    EXPECT_LT(std::abs(h.z2), 4.0);
    EXPECT_LT(std::abs(h.z4), 4.0);
    const double variant = r4_bracket_variant(T, 3);
    EXPECT_GT(std::abs(h.r4.value - variant) / h.r4.std_error, 10.0);
}

TEST(SectorLengths, FromMomentsMatchesPauli) {
    testing::TestRng rng(33);
    SubsystemShape shape = SubsystemShape::uniform(3, 2);
    for (int trial = 0; trial < 10; ++trial) {
        DensityMatrix rho = testing::random_state(shape, rng, trial % 3 + 1);
        PauliCoefficients c = pauli_coeffs(rho);
        std::map<PartySet, double> r2;
        for (uint32_t mask = 1; mask < 8; ++mask) {
            double sum = 0.0;
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    for (int k = 0; k < 4; ++k) {
                        uint32_t support = (i ? 1u : 0u) | (j ? 2u : 0u) | (k ? 4u : 0u);
                        if (support == mask) sum += c(i, j, k) * c(i, j, k);
                    }
                }
            }
            r2[PartySet(mask)] = sum / std::pow(3.0, std::popcount(mask));
        }
        SectorLengths got = sector_lengths_from_moments(r2);
        SectorLengths want = sector_lengths_from_pauli(c);
        EXPECT_NEAR(got.a1, want.a1, 1e-12);
        EXPECT_NEAR(got.a2, want.a2, 1e-12);
        EXPECT_NEAR(got.a3, want.a3, 1e-12);
    }
}

TEST(SectorLengths, MissingSubsetThrows) {
    std::map<PartySet, double> r2;
    for (uint32_t mask = 1; mask < 7; ++mask) r2[PartySet(mask)] = 0.0;
    EXPECT_THROW(sector_lengths_from_moments(r2), InvalidArgument);
}

TEST(Concurrence, ReferenceStates) {
    EXPECT_NEAR(concurrence(bell_state()), 1.0, 1e-10);
    EXPECT_NEAR(concurrence(DensityMatrix::maximally_mixed(SubsystemShape::uniform(2, 2))), 0.0, 1e-12);
    EXPECT_NEAR(concurrence(as_density(basis_state(SubsystemShape::uniform(2, 2), {0, 1}))), 0.0, 1e-10);
    DensityMatrix w_pair = partial_trace(as_density(w3()), {0, 1});
    EXPECT_NEAR(concurrence(w_pair), 2.0 / 3.0, 1e-10);
}

TEST(Concurrence, PureStateFormula) {
    // For a pure two-qubit state C = 2|ad - bc|.
    testing::TestRng rng(34);
    for (int trial = 0; trial < 10; ++trial) {
        PureState p = testing::random_pure(SubsystemShape::uniform(2, 2), rng);
        const CVector &v = p.amplitudes();
        EXPECT_NEAR(concurrence(as_density(p)), 2.0 * std::abs(v(0) * v(3) - v(1) * v(2)), 1e-9);
    }
}

TEST(Concurrence, LocalUnitaryInvariance) {
    testing::TestRng rng(35);
    SubsystemShape shape = SubsystemShape::uniform(2, 2);
    for (int trial = 0; trial < 10; ++trial) {
        DensityMatrix rho = testing::random_state(shape, rng, 2);
        CMatrix u = testing::local_unitary({2, 2}, rng);
        DensityMatrix rotated(CMatrix(u * rho.matrix() * u.adjoint()), shape);
        EXPECT_NEAR(concurrence(rho), concurrence(rotated), 1e-9);
    }
    EXPECT_THROW(concurrence(DensityMatrix::maximally_mixed(SubsystemShape::uniform(2, 3))), InvalidArgument);
}

TEST(Concurrence, GhzWSquaredSum) {
    EXPECT_NEAR(squared_concurrence_sum(ghzw_mix(0.0)), 8.0 / 9.0, 1e-9);
    EXPECT_NEAR(squared_concurrence_sum(ghzw_mix(1.0)), 0.0, 1e-9);
    // Largest g with a nonzero sum, located on a fine grid.
    double last_positive = 0.0;
    for (int k = 0; k <= 1000; ++k) {
        const double g = k / 1000.0;
        if (squared_concurrence_sum(ghzw_mix(g)) > 1e-10) last_positive = g;
    }
    EXPECT_NEAR(last_positive, kConcurrenceVanishingG, 2e-3);
}

TEST(Tangle, ReferenceStates) {
    EXPECT_NEAR(three_tangle_pure(ghz3()), 1.0, 1e-12);
    EXPECT_NEAR(three_tangle_pure(w3()), 0.0, 1e-12);
    EXPECT_NEAR(three_tangle_pure(basis_state(SubsystemShape::uniform(3, 2), {0, 1, 1})), 0.0, 1e-12);
    EXPECT_THROW(three_tangle_pure(basis_state(SubsystemShape::uniform(2, 2), {0, 1})), InvalidArgument);
}

TEST(Tangle, LocalUnitaryInvariance) {
    testing::TestRng rng(36);
    SubsystemShape shape = SubsystemShape::uniform(3, 2);
    for (int trial = 0; trial < 10; ++trial) {
        PureState p = testing::random_pure(shape, rng);
        CMatrix u = testing::local_unitary({2, 2, 2}, rng);
        PureState q(CVector(u * p.amplitudes()), shape);
        EXPECT_NEAR(three_tangle_pure(p), three_tangle_pure(q), 1e-10);
        EXPECT_GE(three_tangle_pure(p), 0.0);
        EXPECT_LE(three_tangle_pure(p), 1.0 + 1e-12);
    }
}

}  // namespace
}  // namespace rmt
