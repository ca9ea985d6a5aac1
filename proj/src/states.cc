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

#include "rmt/states.h"

#include <cmath>
#include <string>

#include "rmt/errors.h"

namespace rmt {

namespace {

const SubsystemShape kThreeQubits = SubsystemShape::uniform(3, 2);
const SubsystemShape kTwoQutrits = SubsystemShape::uniform(2, 3);

void check_unit_interval(double x, const char *name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw InvalidArgument(std::string(name) + " must lie in [0,1], got " + std::to_string(x));
    }
}

CVector qutrit_pair(int a, int b) {
    CVector v = CVector::Zero(9);
    v(3 * a + b) = 1.0;
    return v;
}

}  // namespace

PureState ghz3() {
    CVector v = CVector::Zero(8);
    v(0) = v(7) = 1.0 / std::sqrt(2.0);
    return PureState(v, kThreeQubits);
}

PureState w3() {
    CVector v = CVector::Zero(8);
    v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
    return PureState(v, kThreeQubits);
}

DensityMatrix ghzw_mix(double g) {
    check_unit_interval(g, "g");
    return DensityMatrix(g * ghz3().projector() + (1.0 - g) * w3().projector(), kThreeQubits);
}

CMatrix flip_operator(int party_a, int party_b, const SubsystemShape &shape) {
    if (party_a == party_b) {
        throw InvalidArgument("flip operator needs two distinct parties");
    }
    if (shape.dim(party_a) != shape.dim(party_b)) {
        throw InvalidArgument("flip operator parties have different dimensions");
    }
    Index n = shape.total_dim();
    CMatrix f = CMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        std::vector<int> d = shape.digits(i);
        std::swap(d[static_cast<size_t>(party_a)], d[static_cast<size_t>(party_b)]);
        f(shape.index_of(d), i) = 1.0;
    }
    return f;
}

PureState basis_state(const SubsystemShape &shape, const std::vector<int> &digits) {
    if (static_cast<int>(digits.size()) != shape.num_parties()) {
        throw InvalidArgument("basis_state: wrong number of digits");
    }
    for (int p = 0; p < shape.num_parties(); ++p) {
        if (digits[static_cast<size_t>(p)] < 0 || digits[static_cast<size_t>(p)] >= shape.dim(p)) {
            throw InvalidArgument("basis_state: digit out of range");
        }
    }
    CVector v = CVector::Zero(shape.total_dim());
    v(shape.index_of(digits)) = 1.0;
    return PureState(v, shape);
}

PureState maximally_entangled(int d) {
    SubsystemShape shape = SubsystemShape::uniform(2, d);
    CVector v = CVector::Zero(d * d);
    for (int k = 0; k < d; ++k) {
        v(k * d + k) = 1.0 / std::sqrt(static_cast<double>(d));
    }
    return PureState(v, shape);
}

std::array<CVector, 4> chessboard_vectors() {
    const double c = 1.0 / std::sqrt(6.0);
    auto k = qutrit_pair;
    return {
        CVector(c * (k(0, 0) + 2.0 * k(2, 0)) + c * k(1, 1)),
        CVector(c * (-k(0, 1) + 2.0 * k(2, 1)) + c * k(1, 0)),
        CVector(c * (-k(0, 0) + 2.0 * k(0, 2)) + c * k(1, 1)),
        CVector(c * (k(1, 0) + 2.0 * k(1, 2)) + c * k(0, 1)),
    };
}

DensityMatrix chessboard_state() {
    auto vs = chessboard_vectors();
    // N = 1 / sum_i <V_i|V_i>^2 = 1/4.
    double norm_sum = 0.0;
    CMatrix m = CMatrix::Zero(9, 9);
    for (const auto &v : vs) {
        m += v * v.adjoint();
        norm_sum += std::pow(v.squaredNorm(), 2);
    }
    return DensityMatrix(m / norm_sum, kTwoQutrits);
}

DensityMatrix white_noise_mix(const DensityMatrix &rho, double p) {
    check_unit_interval(p, "p");
    Index n = rho.dim();
    CMatrix id = CMatrix::Identity(n, n) / static_cast<double>(n);
    return DensityMatrix((1.0 - p) * rho.matrix() + p * id, rho.shape());
}

DensityMatrix noisy_chessboard(double p) { return white_noise_mix(chessboard_state(), p); }

PureState source_state() {
    CVector v = CVector::Zero(9);
    v(0) = std::sqrt(5.0 / 6.0);
    v(4) = std::sqrt(1.0 / 6.0);
    return PureState(v, kTwoQutrits);
}

PrepUnitaries prep_unitaries() {
    const double a = std::sqrt(1.0 / 5.0);
    const double b = std::sqrt(4.0 / 5.0);
    PrepUnitaries u{CMatrix::Zero(3, 3), CMatrix::Zero(3, 3), CMatrix::Zero(3, 3)};
    u.u1 << 0, 1, 0,
            1, 0, 0,
            0, 0, 1;
    u.u2 << a, 0, b,
            0, 1, 0,
            b, 0, -a;
    u.u3 << -a, 0, b,
            0, 1, 0,
            b, 0, a;
    return u;
}

PureState vi_from_source(int i) {
    PrepUnitaries u = prep_unitaries();
    CMatrix id = CMatrix::Identity(3, 3);
    CMatrix op;
    switch (i) {
        case 1: op = kron(u.u2, id); break;
        case 2: op = kron(u.u3, u.u1); break;
        case 3: op = kron(id, u.u3); break;
        case 4: op = kron(u.u1, u.u2); break;
        default: throw InvalidArgument("chessboard vector index must be 1..4, got " + std::to_string(i));
    }
    return PureState(op * source_state().amplitudes(), kTwoQutrits);
}

}  // namespace rmt
