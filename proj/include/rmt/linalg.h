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

// Dense complex linear algebra for small multi-qudit systems.
//
// Index convention: party 0 is the leftmost tensor factor, and a basis index
// of the composite system is the mixed-radix number whose most significant
// digit belongs to party 0. For shape [2,2,2], index 4 is |100>.

#ifndef RMT_LINALG_H
#define RMT_LINALG_H

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace rmt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

/// Local dimensions of the parties of a composite system.
class SubsystemShape {
   public:
    explicit SubsystemShape(std::vector<int> dims);
    static SubsystemShape uniform(int num_parties, int d);

    const std::vector<int> &dims() const { return dims_; }
    int num_parties() const { return static_cast<int>(dims_.size()); }
    int dim(int party) const;
    Index total_dim() const;

    /// Shape of the listed parties, in the order given.
    SubsystemShape subshape(const std::vector<int> &parties) const;
    std::vector<int> digits(Index index) const;
    Index index_of(const std::vector<int> &digits) const;

    bool operator==(const SubsystemShape &other) const = default;

   private:
    std::vector<int> dims_;
};

/// Normalized state vector.
class PureState {
   public:
    PureState(CVector amplitudes, SubsystemShape shape);

    const CVector &amplitudes() const { return amplitudes_; }
    const SubsystemShape &shape() const { return shape_; }
    CMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

   private:
    CVector amplitudes_;
    SubsystemShape shape_;
};

/// Hermitian, positive semidefinite, unit-trace matrix over a shape.
/// Construction validates all three properties and stores the explicitly
/// symmetrized matrix (m + m^dagger)/2.
class DensityMatrix {
   public:
    DensityMatrix(const CMatrix &matrix, SubsystemShape shape);
    explicit DensityMatrix(const PureState &psi);
    static DensityMatrix maximally_mixed(SubsystemShape shape);

    const CMatrix &matrix() const { return matrix_; }
    const SubsystemShape &shape() const { return shape_; }
    Index dim() const { return matrix_.rows(); }
    double purity() const;

   private:
    CMatrix matrix_;
    SubsystemShape shape_;
};

CMatrix kron(const CMatrix &a, const CMatrix &b);
CMatrix kron_all(const std::vector<CMatrix> &factors);
CVector kron(const CVector &a, const CVector &b);

/// Reduced state on `keep` (sorted ascending in the output). Throws
/// InvalidArgument on an empty, duplicated, or out-of-range party list.
DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<int> &keep);
CMatrix partial_trace(const CMatrix &m, const SubsystemShape &shape, const std::vector<int> &keep);

/// Transpose on one party. The result need not be PSD.
CMatrix partial_transpose(const DensityMatrix &rho, int party);
CMatrix partial_transpose(const CMatrix &m, const SubsystemShape &shape, int party);

bool is_hermitian(const CMatrix &h, double tol);

/// Ascending eigenvalues. Throws InvalidArgument unless h is Hermitian to 1e-8.
RVector eigvals_hermitian(const CMatrix &h);
double min_eigenvalue(const CMatrix &h);

/// Descending singular values.
RVector singular_values(const CMatrix &m);
RVector singular_values(const RMatrix &m);
double trace_norm(const CMatrix &m);
double trace_norm(const RMatrix &m);

/// Square root of a Hermitian PSD matrix; negative eigenvalues are clipped
/// to zero first.
CMatrix sqrtm_psd(const CMatrix &h);

/// Root fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)), clamped to [0, 1].
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

}  // namespace rmt

#endif
