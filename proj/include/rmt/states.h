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

#ifndef RMT_STATES_H
#define RMT_STATES_H

#include <array>

#include "rmt/linalg.h"

namespace rmt {

/// (|000> + |111>)/sqrt(2) on [2,2,2].
PureState ghz3();
/// (|001> + |010> + |100>)/sqrt(3) on [2,2,2].
PureState w3();

/// g |GHZ><GHZ| + (1-g) |W><W|, g in [0,1].
DensityMatrix ghzw_mix(double g);

/// Permutation matrix swapping parties a and b of `shape`. Both parties must
/// have the same local dimension.
CMatrix flip_operator(int party_a, int party_b, const SubsystemShape &shape);

/// Computational basis ket with the given digits.
PureState basis_state(const SubsystemShape &shape, const std::vector<int> &digits);

/// sum_k |kk>/sqrt(d) on [d,d].
PureState maximally_entangled(int d);

/// The four chessboard kets V1..V4 on [3,3]. Each has unit norm and they are
/// mutually orthogonal.
std::array<CVector, 4> chessboard_vectors();

/// (1/4) sum_i |V_i><V_i|: rank 4, PPT, entangled.
DensityMatrix chessboard_state();

/// (1-p) rho + p I/D.
DensityMatrix white_noise_mix(const DensityMatrix &rho, double p);

/// (1-p) rho_ch + p I/9. Unit trace for every p in [0,1].
DensityMatrix noisy_chessboard(double p);

/// sqrt(5/6)|00> + sqrt(1/6)|11> on [3,3].
PureState source_state();

struct PrepUnitaries {
    CMatrix u1;  // swaps |0> and |1>
    CMatrix u2;
    CMatrix u3;
};
PrepUnitaries prep_unitaries();

/// V_i prepared by local unitaries acting on source_state(), i in 1..4.
PureState vi_from_source(int i);

}  // namespace rmt

#endif
