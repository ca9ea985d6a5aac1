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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "rmt/errors.h"
#include "rmt/linalg.h"
#include "rmt/states.h"
#include "test_util.h"

namespace rmt {
namespace {

using testing::TestRng;

CMatrix pauli_z() {
    CMatrix z = CMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return z;
}

TEST(Shape, RejectsSmallDimensions) {
    EXPECT_THROW(SubsystemShape({2, 1}), InvalidArgument);
    EXPECT_THROW(SubsystemShape(std::vector<int>{}), InvalidArgument);
    EXPECT_THROW(SubsystemShape::uniform(2, 2).dim(2), InvalidArgument);
}

TEST(Shape, DigitsRoundTrip) {
    SubsystemShape s({2, 3, 2});
    EXPECT_EQ(s.total_dim(), 12);
    for (Index i = 0; i < 12; ++i) {
        EXPECT_EQ(s.index_of(s.digits(i)), i);
        EXPECT_EQ(s.digits(i), testing::to_digits(i, {2, 3, 2}));
    }
    // Party 0 is the most significant digit.
    EXPECT_EQ(s.index_of({1, 0, 0}), 6);
}

TEST(States, ValidationRejectsBadInput) {
    SubsystemShape s = SubsystemShape::uniform(1, 2);
    CMatrix m = CMatrix::Identity(2, 2) / 2.0;
    EXPECT_NO_THROW(DensityMatrix(m, s));
    CMatrix not_hermitian = m;
    not_hermitian(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix(not_hermitian, s), InvalidArgument);
    EXPECT_THROW(DensityMatrix(CMatrix(2.0 * m), s), InvalidArgument);
    CMatrix negative = CMatrix::Zero(2, 2);
    negative(0, 0) = 1.1;
    negative(1, 1) = -0.1;
    EXPECT_THROW(DensityMatrix(negative, s), InvalidArgument);
    CMatrix nan = m;
    nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(DensityMatrix(nan, s), InvalidArgument);
    EXPECT_THROW(DensityMatrix(CMatrix::Identity(3, 3) / 3.0, s), InvalidArgument);
    EXPECT_THROW(PureState(CVector::Ones(2), s), InvalidArgument);
}

TEST(Kron, IdentityAndDiagonalCases) {
    const CMatrix id2 = CMatrix::Identity(2, 2);
    EXPECT_LT(testing::max_abs_diff(kron(id2, id2), CMatrix::Identity(4, 4)), 1e-15);
    CMatrix zz = kron(pauli_z(), pauli_z());
    CMatrix expected = CMatrix::Zero(4, 4);
    expected.diagonal() << 1.0, -1.0, -1.0, 1.0;
    EXPECT_LT(testing::max_abs_diff(zz, expected), 1e-15);
}

TEST(Kron, MatchesElementFormulaAndTraceFactorizes) {
    TestRng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        CMatrix a = testing::ginibre(2, 2, rng), b = testing::ginibre(3, 3, rng);
        CMatrix k = kron(a, b);
        ASSERT_EQ(k.rows(), 6);
        for (Index i = 0; i < 2; ++i) {
            for (Index j = 0; j < 2; ++j) {
                for (Index r = 0; r < 3; ++r) {
                    for (Index c = 0; c < 3; ++c) EXPECT_EQ(k(3 * i + r, 3 * j + c), a(i, j) * b(r, c));
                }
            }
        }
        EXPECT_LT(std::abs(k.trace() - a.trace() * b.trace()), 1e-12);
    }
}

TEST(PartialTrace, GhzMarginalIsMaximallyMixed) {
    DensityMatrix ghz(ghz3());
    for (int p = 0; p < 3; ++p) {
        EXPECT_LT(testing::max_abs_diff(partial_trace(ghz, {p}).matrix(), CMatrix::Identity(2, 2) / 2.0), 1e-14);
    }
}

TEST(PartialTrace, ProductStateFactorizes) {
    TestRng rng(3);
    DensityMatrix a = testing::random_state(SubsystemShape({2}), rng);
    DensityMatrix b = testing::random_state(SubsystemShape({3}), rng);
    DensityMatrix ab(kron(a.matrix(), b.matrix()), SubsystemShape({2, 3}));
    EXPECT_LT(testing::max_abs_diff(partial_trace(ab, {0}).matrix(), a.matrix()), 1e-14);
    EXPECT_LT(testing::max_abs_diff(partial_trace(ab, {1}).matrix(), b.matrix()), 1e-14);
    EXPECT_LT(testing::max_abs_diff(partial_trace(ab, {0, 1}).matrix(), ab.matrix()), 1e-15);
}

TEST(PartialTrace, MatchesIndexContraction) {
    TestRng rng(5);
    const std::vector<int> dims{2, 3, 2};
    DensityMatrix rho = testing::random_state(SubsystemShape(dims), rng);
    for (const std::vector<int> &keep : std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {2, 0}}) {
        std::vector<int> sorted = keep;
        std::sort(sorted.begin(), sorted.end());
        CMatrix expected = testing::brute_partial_trace(rho.matrix(), dims, sorted);
        DensityMatrix reduced = partial_trace(rho, keep);
        EXPECT_LT(testing::max_abs_diff(reduced.matrix(), expected), 1e-14);
        EXPECT_NEAR(reduced.matrix().trace().real(), 1.0, 1e-12);
    }
}

TEST(PartialTrace, SequentialEqualsOneStep) {
    TestRng rng(7);
    DensityMatrix rho = testing::random_state(SubsystemShape({2, 2, 3}), rng);
    DensityMatrix two_step = partial_trace(partial_trace(rho, {0, 2}), {1});
    EXPECT_LT(testing::max_abs_diff(two_step.matrix(), partial_trace(rho, {2}).matrix()), 1e-12);
}

TEST(PartialTrace, RejectsBadParties) {
    DensityMatrix rho = DensityMatrix::maximally_mixed(SubsystemShape::uniform(2, 2));
    EXPECT_THROW(partial_trace(rho, {}), InvalidArgument);
    EXPECT_THROW(partial_trace(rho, {2}), InvalidArgument);
    EXPECT_THROW(partial_trace(rho, {-1}), InvalidArgument);
    EXPECT_THROW(partial_trace(rho, {0, 0}), InvalidArgument);
}

TEST(PartialTranspose, BellStateHasNegativeHalf) {
    DensityMatrix bell(maximally_entangled(2));
    EXPECT_NEAR(min_eigenvalue(partial_transpose(bell, 0)), -0.5, 1e-12);
    EXPECT_NEAR(min_eigenvalue(partial_transpose(bell, 1)), -0.5, 1e-12);
}

TEST(PartialTranspose, ProductStateStaysPositive) {
    TestRng rng(9);
    DensityMatrix a = testing::random_state(SubsystemShape({3}), rng);
    DensityMatrix b = testing::random_state(SubsystemShape({3}), rng);
    DensityMatrix ab(kron(a.matrix(), b.matrix()), SubsystemShape({3, 3}));
    RVector before = eigvals_hermitian(ab.matrix());
    RVector after = eigvals_hermitian(partial_transpose(ab, 1));
    EXPECT_LT((before - after).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GE(after(0), -1e-12);
}

TEST(PartialTranspose, MatchesIndexSwapAndIsInvolution) {
    TestRng rng(13);
    const std::vector<int> dims{2, 3, 2};
    SubsystemShape shape(dims);
    for (int trial = 0; trial < 5; ++trial) {
        DensityMatrix rho = testing::random_state(shape, rng);
        for (int p = 0; p < 3; ++p) {
            CMatrix pt = partial_transpose(rho, p);
            EXPECT_LT(testing::max_abs_diff(pt, testing::brute_partial_transpose(rho.matrix(), dims, p)), 1e-15);
            EXPECT_TRUE(is_hermitian(pt, 1e-12));
            EXPECT_NEAR(pt.trace().real(), 1.0, 1e-12);
            EXPECT_LT(testing::max_abs_diff(partial_transpose(pt, shape, p), rho.matrix()), 1e-15);
        }
    }
    EXPECT_THROW(partial_transpose(DensityMatrix::maximally_mixed(shape), 3), InvalidArgument);
}

TEST(Eigen, DiagonalAndMixedCases) {
    CMatrix d = CMatrix::Zero(3, 3);
    d.diagonal() << 3.0, 1.0, 2.0;
    RVector ev = eigvals_hermitian(d);
    EXPECT_NEAR(ev(0), 1.0, 1e-14);
    EXPECT_NEAR(ev(1), 2.0, 1e-14);
    EXPECT_NEAR(ev(2), 3.0, 1e-14);
    RVector half = eigvals_hermitian(CMatrix::Identity(2, 2) / 2.0);
    EXPECT_NEAR(half(0), 0.5, 1e-15);
    EXPECT_NEAR(half(1), 0.5, 1e-15);
}

TEST(Eigen, TraceIdentitiesAndUnitaryInvariance) {
    TestRng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        CMatrix h = testing::random_hermitian(6, rng);
        RVector ev = eigvals_hermitian(h);
        for (Index i = 1; i < ev.size(); ++i) EXPECT_LE(ev(i - 1), ev(i));
        EXPECT_NEAR(ev.sum(), h.trace().real(), 1e-9);
        EXPECT_NEAR(ev.squaredNorm(), (h * h).trace().real(), 1e-9);
        CMatrix u = testing::random_unitary(6, rng);
        RVector rotated = eigvals_hermitian(CMatrix(u * h * u.adjoint()));
        EXPECT_LT((ev - rotated).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(Eigen, RejectsNonHermitian) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(eigvals_hermitian(m), InvalidArgument);
}

TEST(SingularValues, BasicCases) {
    EXPECT_NEAR(trace_norm(CMatrix(CMatrix::Identity(3, 3))), 3.0, 1e-14);
    CVector alpha(3), beta(3);
    alpha << Complex(1, 2), 0.5, Complex(0, -1);
    beta << 2.0, Complex(1, 1), 0.0;
    RVector s = singular_values(CMatrix(alpha * beta.transpose()));
    EXPECT_NEAR(s(0), alpha.norm() * beta.norm(), 1e-12);
    EXPECT_LT(s.tail(2).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SingularValues, OrderingAndNormInequality) {
    TestRng rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        CMatrix m = testing::ginibre(4, 4, rng);
        RVector s = singular_values(m);
        for (Index i = 0; i < s.size(); ++i) EXPECT_GE(s(i), 0.0);
        for (Index i = 1; i < s.size(); ++i) EXPECT_GE(s(i - 1), s(i));
        EXPECT_NEAR(trace_norm(m), s.sum(), 1e-12);
        EXPECT_GE(trace_norm(m) * trace_norm(m), (m * m.adjoint()).trace().real() - 1e-12);
        EXPECT_NEAR(s.squaredNorm(), (m * m.adjoint()).trace().real(), 1e-9);
    }
}

TEST(Fidelity, IdentityOrthogonalAndPureCases) {
    TestRng rng(23);
    SubsystemShape shape({3});
    DensityMatrix rho = testing::random_state(shape, rng);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
    DensityMatrix zero(basis_state(shape, {0})), one(basis_state(shape, {1}));
    EXPECT_NEAR(fidelity(zero, one), 0.0, 1e-7);
    PureState psi = testing::random_pure(shape, rng);
    DensityMatrix sigma = testing::random_state(shape, rng);
    double expected = std::sqrt((psi.amplitudes().adjoint() * sigma.matrix() * psi.amplitudes())(0, 0).real());
    EXPECT_NEAR(fidelity(DensityMatrix(psi), sigma), expected, 1e-7);
}

TEST(Fidelity, SymmetricOnRandomPairs) {
    TestRng rng(29);
    SubsystemShape shape({2, 3});
    for (int trial = 0; trial < 10; ++trial) {
        DensityMatrix a = testing::random_state(shape, rng), b = testing::random_state(shape, rng, 2);
        double f = fidelity(a, b);
        EXPECT_NEAR(f, fidelity(b, a), 1e-9);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
    }
    EXPECT_THROW(fidelity(DensityMatrix::maximally_mixed(SubsystemShape({2, 3})),
                          DensityMatrix::maximally_mixed(SubsystemShape({3, 2}))),
                 InvalidArgument);
}

}  // namespace
}  // namespace rmt
