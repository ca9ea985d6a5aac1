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

// Operator-basis decompositions: the three-qubit Pauli expansion and the
// two-qudit generalized Bloch decomposition.

#ifndef RMT_BLOCH_H
#define RMT_BLOCH_H

#include <array>
#include <vector>

#include "rmt/linalg.h"

namespace rmt {

/// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
const CMatrix &pauli(int k);

/// Coefficients alpha_ijk = tr(rho sigma_i (x) sigma_j (x) sigma_k), so that
/// rho = (1/8) sum alpha_ijk sigma_i (x) sigma_j (x) sigma_k.
struct PauliCoefficients {
    std::array<double, 64> alpha{};

    double operator()(int i, int j, int k) const { return alpha[static_cast<size_t>(16 * i + 4 * j + k)]; }
    double &operator()(int i, int j, int k) { return alpha[static_cast<size_t>(16 * i + 4 * j + k)]; }
};

PauliCoefficients pauli_coeffs(const DensityMatrix &rho);
CMatrix rho_from_pauli(const PauliCoefficients &c);

/// Three-qubit sector lengths: A_k sums alpha^2 over coefficients with
/// exactly k non-identity factors.
struct SectorLengths {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
};

SectorLengths sector_lengths_from_pauli(const PauliCoefficients &c);

/// Traceless Hermitian basis with tr(lambda_i lambda_j) = d delta_ij.
///
/// Ordering: the symmetric off-diagonal matrices for pairs j<k in
/// lexicographic order, then the antisymmetric ones in the same pair order,
/// then the diagonal ones l = 1..d-1. This is the textbook Gell-Mann set
/// scaled by sqrt(d/2).
struct GellMannBasis {
    int d = 0;
    std::vector<CMatrix> lambdas;
};

GellMannBasis gell_mann_basis(int d);

/// rho = (1/d^2)[I(x)I + sum_i (alpha_i lambda_i(x)I + beta_i I(x)lambda_i)
///              + sum_ij T_ij lambda_i(x)lambda_j].
struct BlochDecomposition {
    int d = 0;
    RVector alpha;
    RVector beta;
    RMatrix T;
};

BlochDecomposition bloch_decompose(const DensityMatrix &rho);
CMatrix bloch_reconstruct(const BlochDecomposition &b);

}  // namespace rmt

#endif
