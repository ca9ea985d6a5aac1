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

#include "rmt/bloch.h"

#include <cmath>
#include <string>

#include "rmt/errors.h"

namespace rmt {

namespace {

// tr(a b) without forming the product.
Complex trace_of_product(const CMatrix &a, const CMatrix &b) { return a.cwiseProduct(b.transpose()).sum(); }

std::array<CMatrix, 4> make_paulis() {
    std::array<CMatrix, 4> s;
    for (auto &m : s) {
        m = CMatrix::Zero(2, 2);
    }
    const Complex i(0.0, 1.0);
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, -i, i, 0;
    s[3] << 1, 0, 0, -1;
    return s;
}

}  // namespace

const CMatrix &pauli(int k) {
    static const std::array<CMatrix, 4> paulis = make_paulis();
    if (k < 0 || k > 3) {
        throw InvalidArgument("pauli index must be 0..3");
    }
    return paulis[static_cast<size_t>(k)];
}

PauliCoefficients pauli_coeffs(const DensityMatrix &rho) {
    if (!(rho.shape() == SubsystemShape::uniform(3, 2))) {
        throw InvalidArgument("pauli_coeffs needs a three-qubit state");
    }
    PauliCoefficients c;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CMatrix ij = kron(pauli(i), pauli(j));
            for (int k = 0; k < 4; ++k) {
                c(i, j, k) = trace_of_product(rho.matrix(), kron(ij, pauli(k))).real();
            }
        }
    }
    return c;
}

CMatrix rho_from_pauli(const PauliCoefficients &c) {
    CMatrix m = CMatrix::Zero(8, 8);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CMatrix ij = kron(pauli(i), pauli(j));
            for (int k = 0; k < 4; ++k) {
                m += c(i, j, k) * kron(ij, pauli(k));
            }
        }
    }
    return m / 8.0;
}

SectorLengths sector_lengths_from_pauli(const PauliCoefficients &c) {
    SectorLengths a;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) {
                int weight = (i != 0) + (j != 0) + (k != 0);
                double sq = c(i, j, k) * c(i, j, k);
                if (weight == 1) a.a1 += sq;
                if (weight == 2) a.a2 += sq;
                if (weight == 3) a.a3 += sq;
            }
        }
    }
    return a;
}

GellMannBasis gell_mann_basis(int d) {
    if (d < 2) {
        throw InvalidArgument("Gell-Mann basis needs d >= 2, got " + std::to_string(d));
    }
    GellMannBasis basis{d, {}};
    const Complex i(0.0, 1.0);
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            CMatrix m = CMatrix::Zero(d, d);
            m(j, k) = m(k, j) = 1.0;
            basis.lambdas.push_back(m);
        }
    }
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            CMatrix m = CMatrix::Zero(d, d);
            m(j, k) = -i;
            m(k, j) = i;
            basis.lambdas.push_back(m);
        }
    }
    for (int l = 1; l < d; ++l) {
        CMatrix m = CMatrix::Zero(d, d);
        for (int j = 0; j < l; ++j) {
            m(j, j) = 1.0;
        }
        m(l, l) = -static_cast<double>(l);
        basis.lambdas.push_back(m * std::sqrt(2.0 / (l * (l + 1.0))));
    }
    const double scale = std::sqrt(d / 2.0);
    for (auto &m : basis.lambdas) {
        m *= scale;
    }
    return basis;
}

BlochDecomposition bloch_decompose(const DensityMatrix &rho) {
    const auto &dims = rho.shape().dims();
    if (dims.size() != 2 || dims[0] != dims[1]) {
        throw InvalidArgument("bloch_decompose needs two parties of equal dimension");
    }
    const int d = dims[0];
    GellMannBasis basis = gell_mann_basis(d);
    const auto n = static_cast<Index>(basis.lambdas.size());
    CMatrix id = CMatrix::Identity(d, d);

    BlochDecomposition b{d, RVector(n), RVector(n), RMatrix(n, n)};
    for (Index a = 0; a < n; ++a) {
        const CMatrix &la = basis.lambdas[static_cast<size_t>(a)];
        b.alpha(a) = trace_of_product(rho.matrix(), kron(la, id)).real();
        b.beta(a) = trace_of_product(rho.matrix(), kron(id, la)).real();
        for (Index c = 0; c < n; ++c) {
            b.T(a, c) = trace_of_product(rho.matrix(), kron(la, basis.lambdas[static_cast<size_t>(c)])).real();
        }
    }
    return b;
}

CMatrix bloch_reconstruct(const BlochDecomposition &b) {
    const int d = b.d;
    GellMannBasis basis = gell_mann_basis(d);
    const auto n = static_cast<Index>(basis.lambdas.size());
    if (b.alpha.size() != n || b.beta.size() != n || b.T.rows() != n || b.T.cols() != n) {
        throw InvalidArgument("Bloch decomposition has inconsistent sizes");
    }
    CMatrix id = CMatrix::Identity(d, d);
    CMatrix m = kron(id, id);
    for (Index a = 0; a < n; ++a) {
        const CMatrix &la = basis.lambdas[static_cast<size_t>(a)];
        m += b.alpha(a) * kron(la, id) + b.beta(a) * kron(id, la);
        for (Index c = 0; c < n; ++c) {
            m += b.T(a, c) * kron(la, basis.lambdas[static_cast<size_t>(c)]);
        }
    }
    return m / static_cast<double>(d * d);
}

}  // namespace rmt
