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

#ifndef RMT_INVARIANTS_H
#define RMT_INVARIANTS_H

#include <map>

#include "rmt/bloch.h"
#include "rmt/linalg.h"
#include "rmt/parties.h"

namespace rmt {

/// Reference values for the GHZ-W family: the three-tangle vanishes for
/// g <= 0.627 and the squared-concurrence sum vanishes for g >= 0.292.
inline constexpr double kThreeTangleVanishingG = 0.627;
inline constexpr double kConcurrenceVanishingG = 0.292;

/// Second and fourth randomized-measurement moments of a two-qudit state in
/// units where a pure product state has r2 = r4 = 1.
struct MomentPair {
    double r2 = 0.0;
    double r4 = 0.0;
};

/// r2 = tr(TT^T)/(d-1)^2,
/// r4 = [(1/3) tr(TT^T)^2 + (2/3) tr(TT^T TT^T)] / (d-1)^4.
///
/// Both depend on T only through its singular values. The normalized Haar
/// averages for the observable diag(sqrt(3/2), 0, -sqrt(3/2)) (d = 3) and
/// sigma_z (d = 2) reproduce these expressions; see haar_moment_oracle().
MomentPair moments_from_T(const RMatrix &T, int d);
MomentPair moments_from_singular_values(const RVector &sigma, int d);

/// [(1/3) tr(TT^T)/(d-1)^2 + (2/3) tr(TT^T TT^T)] / (d-1)^4, a bracket
/// placement that is not homogeneous in T. Kept so that tests can show the
/// Haar average rejects it; nothing else uses it.
double r4_bracket_variant(const RMatrix &T, int d);

/// A1 = 3 sum R_X, A2 = 9 sum R_XY, A3 = 27 R_ABC over the seven non-empty
/// subsets of {A,B,C}. Throws InvalidArgument if any subset is missing.
SectorLengths sector_lengths_from_moments(const std::map<PartySet, double> &r2_by_subset);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix &rho);

/// C(A|B)^2 + C(A|C)^2 of a three-qubit state.
double squared_concurrence_sum(const DensityMatrix &rho);

/// Coffman-Kundu-Wootters three-tangle 4|Det(a)| of a pure three-qubit state,
/// Det being Cayley's hyperdeterminant of the amplitude tensor.
double three_tangle_pure(const PureState &psi);

}  // namespace rmt

#endif
