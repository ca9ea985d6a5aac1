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

#include <algorithm>
#include <cmath>
#include <string>

#include "rmt/errors.h"

namespace rmt {

namespace {

MomentPair moments_from_invariants(double x, double y, int d) {
    const double s = static_cast<double>(d - 1);
    return {x / (s * s), (x * x / 3.0 + 2.0 * y / 3.0) / std::pow(s, 4)};
}

}  // namespace

MomentPair moments_from_T(const RMatrix &T, int d) {
    if (d < 2) {
        throw InvalidArgument("moments_from_T needs d >= 2");
    }
    const Index n = static_cast<Index>(d) * d - 1;
    if (T.rows() != n || T.cols() != n) {
        throw InvalidArgument("correlation matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    RMatrix gram = T * T.transpose();
    return moments_from_invariants(gram.trace(), gram.squaredNorm(), d);
}

double r4_bracket_variant(const RMatrix &T, int d) {
    const double s = static_cast<double>(d - 1);
    RMatrix gram = T * T.transpose();
    return (gram.trace() / (3.0 * s * s) + 2.0 * gram.squaredNorm() / 3.0) / std::pow(s, 4);
}

MomentPair moments_from_singular_values(const RVector &sigma, int d) {
    return moments_from_invariants(sigma.squaredNorm(), sigma.array().pow(4).sum(), d);
}

SectorLengths sector_lengths_from_moments(const std::map<PartySet, double> &r2_by_subset) {
    SectorLengths a;
    for (PartySet s : all_nonempty_subsets(3)) {
        auto it = r2_by_subset.find(s);
        if (it == r2_by_subset.end()) {
            throw InvalidArgument("missing second moment for subset " + s.label());
        }
        switch (s.size()) {
            case 1: a.a1 += 3.0 * it->second; break;
            case 2: a.a2 += 9.0 * it->second; break;
            default: a.a3 += 27.0 * it->second; break;
        }
    }
    return a;
}

double concurrence(const DensityMatrix &rho) {
    if (!(rho.shape() == SubsystemShape::uniform(2, 2))) {
        throw InvalidArgument("concurrence needs a two-qubit state");
    }
    CMatrix yy = CMatrix::Zero(4, 4);
    yy(0, 3) = yy(3, 0) = -1.0;
    yy(1, 2) = yy(2, 1) = 1.0;
    CMatrix flipped = yy * rho.matrix().conjugate() * yy;
    // The square roots of the eigenvalues of rho * flipped are the singular
    // values of sqrt(rho) sqrt(flipped).
    RVector lambda = singular_values(CMatrix(sqrtm_psd(rho.matrix()) * sqrtm_psd(flipped)));
    return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

double squared_concurrence_sum(const DensityMatrix &rho) {
    if (!(rho.shape() == SubsystemShape::uniform(3, 2))) {
        throw InvalidArgument("squared_concurrence_sum needs a three-qubit state");
    }
    double c_ab = concurrence(partial_trace(rho, {0, 1}));
    double c_ac = concurrence(partial_trace(rho, {0, 2}));
    return c_ab * c_ab + c_ac * c_ac;
}

double three_tangle_pure(const PureState &psi) {
    if (!(psi.shape() == SubsystemShape::uniform(3, 2))) {
        throw InvalidArgument("three_tangle_pure needs a three-qubit state");
    }
    const CVector &a = psi.amplitudes();
    auto x = [&a](int i, int j, int k) { return a(4 * i + 2 * j + k); };
    Complex d1 = x(0, 0, 0) * x(0, 0, 0) * x(1, 1, 1) * x(1, 1, 1) + x(0, 0, 1) * x(0, 0, 1) * x(1, 1, 0) * x(1, 1, 0) +
                 x(0, 1, 0) * x(0, 1, 0) * x(1, 0, 1) * x(1, 0, 1) + x(1, 0, 0) * x(1, 0, 0) * x(0, 1, 1) * x(0, 1, 1);
    Complex d2 = x(0, 0, 0) * x(1, 1, 1) * x(0, 1, 1) * x(1, 0, 0) + x(0, 0, 0) * x(1, 1, 1) * x(1, 0, 1) * x(0, 1, 0) +
                 x(0, 0, 0) * x(1, 1, 1) * x(1, 1, 0) * x(0, 0, 1) + x(0, 1, 1) * x(1, 0, 0) * x(1, 0, 1) * x(0, 1, 0) +
                 x(0, 1, 1) * x(1, 0, 0) * x(1, 1, 0) * x(0, 0, 1) + x(1, 0, 1) * x(0, 1, 0) * x(1, 1, 0) * x(0, 0, 1);
    Complex d3 = x(0, 0, 0) * x(1, 1, 0) * x(1, 0, 1) * x(0, 1, 1) + x(1, 1, 1) * x(0, 0, 1) * x(0, 1, 0) * x(1, 0, 0);
    return std::clamp(4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3), 0.0, 1.0);
}

}  // namespace rmt
