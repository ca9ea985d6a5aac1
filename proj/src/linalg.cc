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

#include "rmt/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rmt/errors.h"

namespace rmt {

SubsystemShape::SubsystemShape(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw InvalidArgument("shape needs at least one party");
    }
    for (int d : dims_) {
        if (d < 2) {
            throw InvalidArgument("local dimension must be >= 2, got " + std::to_string(d));
        }
    }
}

SubsystemShape SubsystemShape::uniform(int num_parties, int d) {
    if (num_parties < 1) {
        throw InvalidArgument("shape needs at least one party");
    }
    return SubsystemShape(std::vector<int>(static_cast<size_t>(num_parties), d));
}

int SubsystemShape::dim(int party) const {
    if (party < 0 || party >= num_parties()) {
        throw InvalidArgument("party index " + std::to_string(party) + " out of range");
    }
    return dims_[static_cast<size_t>(party)];
}

Index SubsystemShape::total_dim() const {
    Index total = 1;
    for (int d : dims_) {
        total *= d;
    }
    return total;
}

SubsystemShape SubsystemShape::subshape(const std::vector<int> &parties) const {
    std::vector<int> sub;
    sub.reserve(parties.size());
    for (int p : parties) {
        sub.push_back(dim(p));
    }
    return SubsystemShape(std::move(sub));
}

std::vector<int> SubsystemShape::digits(Index index) const {
    std::vector<int> out(dims_.size());
    for (size_t k = dims_.size(); k-- > 0;) {
        out[k] = static_cast<int>(index % dims_[k]);
        index /= dims_[k];
    }
    return out;
}

Index SubsystemShape::index_of(const std::vector<int> &digits) const {
    Index index = 0;
    for (size_t k = 0; k < dims_.size(); ++k) {
        index = index * dims_[k] + digits[k];
    }
    return index;
}

PureState::PureState(CVector amplitudes, SubsystemShape shape)
    : amplitudes_(std::move(amplitudes)), shape_(std::move(shape)) {
    if (amplitudes_.size() != shape_.total_dim()) {
        throw InvalidArgument("amplitude vector does not match shape");
    }
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTol) {
        throw InvalidArgument("state vector is not normalized");
    }
}

DensityMatrix::DensityMatrix(const CMatrix &matrix, SubsystemShape shape) : shape_(std::move(shape)) {
    if (matrix.rows() != matrix.cols() || matrix.rows() != shape_.total_dim()) {
        throw InvalidArgument("density matrix does not match shape");
    }
    if (!matrix.allFinite()) {
        throw InvalidArgument("density matrix has non-finite entries");
    }
    if (!is_hermitian(matrix, kHermitianTol)) {
        throw InvalidArgument("density matrix is not Hermitian");
    }
    matrix_ = (matrix + matrix.adjoint()) / 2.0;
    if (std::abs(matrix_.trace().real() - 1.0) > kTraceTol) {
        throw InvalidArgument("density matrix trace is " + std::to_string(matrix_.trace().real()));
    }
    if (min_eigenvalue(matrix_) < -kPsdTol) {
        throw InvalidArgument("density matrix has a negative eigenvalue");
    }
}

DensityMatrix::DensityMatrix(const PureState &psi) : DensityMatrix(psi.projector(), psi.shape()) {}

DensityMatrix DensityMatrix::maximally_mixed(SubsystemShape shape) {
    Index n = shape.total_dim();
    return DensityMatrix(CMatrix::Identity(n, n) / static_cast<double>(n), std::move(shape));
}

double DensityMatrix::purity() const {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return matrix_.squaredNorm();
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CVector kron(const CVector &a, const CVector &b) {
    CVector out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

CMatrix kron_all(const std::vector<CMatrix> &factors) {
    if (factors.empty()) {
        return CMatrix::Identity(1, 1);
    }
    CMatrix out = factors.front();
    for (size_t k = 1; k < factors.size(); ++k) {
        out = kron(out, factors[k]);
    }
    return out;
}

namespace {

std::vector<int> validated_keep(const SubsystemShape &shape, const std::vector<int> &keep) {
    if (keep.empty()) {
        throw InvalidArgument("partial trace must keep at least one party");
    }
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidArgument("duplicate party index in partial trace");
    }
    for (int p : sorted) {
        shape.dim(p);  // range check
    }
    return sorted;
}

}  // namespace

CMatrix partial_trace(const CMatrix &m, const SubsystemShape &shape, const std::vector<int> &keep) {
    std::vector<int> kept = validated_keep(shape, keep);
    if (m.rows() != shape.total_dim() || m.cols() != shape.total_dim()) {
        throw InvalidArgument("matrix does not match shape");
    }
    std::vector<int> traced;
    for (int p = 0; p < shape.num_parties(); ++p) {
        if (!std::binary_search(kept.begin(), kept.end(), p)) {
            traced.push_back(p);
        }
    }
    SubsystemShape kept_shape = shape.subshape(kept);
    Index n = shape.total_dim();
    CMatrix out = CMatrix::Zero(kept_shape.total_dim(), kept_shape.total_dim());

    std::vector<std::vector<int>> all_digits(static_cast<size_t>(n));
    std::vector<Index> kept_index(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) {
        all_digits[static_cast<size_t>(i)] = shape.digits(i);
        std::vector<int> sub;
        for (int p : kept) {
            sub.push_back(all_digits[static_cast<size_t>(i)][static_cast<size_t>(p)]);
        }
        kept_index[static_cast<size_t>(i)] = kept_shape.index_of(sub);
    }
    for (Index i = 0; i < n; ++i) {
        const auto &di = all_digits[static_cast<size_t>(i)];
        for (Index j = 0; j < n; ++j) {
            const auto &dj = all_digits[static_cast<size_t>(j)];
            bool match = true;
            for (int p : traced) {
                if (di[static_cast<size_t>(p)] != dj[static_cast<size_t>(p)]) {
                    match = false;
                    break;
                }
            }
            if (match) {
                out(kept_index[static_cast<size_t>(i)], kept_index[static_cast<size_t>(j)]) += m(i, j);
            }
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<int> &keep) {
    std::vector<int> kept = validated_keep(rho.shape(), keep);
    return DensityMatrix(partial_trace(rho.matrix(), rho.shape(), kept), rho.shape().subshape(kept));
}

CMatrix partial_transpose(const CMatrix &m, const SubsystemShape &shape, int party) {
    shape.dim(party);
    if (m.rows() != shape.total_dim() || m.cols() != shape.total_dim()) {
        throw InvalidArgument("matrix does not match shape");
    }
    Index n = shape.total_dim();
    CMatrix out(n, n);
    auto p = static_cast<size_t>(party);
    for (Index i = 0; i < n; ++i) {
        std::vector<int> di = shape.digits(i);
        for (Index j = 0; j < n; ++j) {
            std::vector<int> dj = shape.digits(j);
            std::swap(di[p], dj[p]);
            out(shape.index_of(di), shape.index_of(dj)) = m(i, j);
            std::swap(di[p], dj[p]);
        }
    }
    return out;
}

CMatrix partial_transpose(const DensityMatrix &rho, int party) {
    return partial_transpose(rho.matrix(), rho.shape(), party);
}

bool is_hermitian(const CMatrix &h, double tol) {
    if (h.rows() != h.cols()) {
        return false;
    }
    return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

RVector eigvals_hermitian(const CMatrix &h) {
    if (!is_hermitian(h, 1e-8)) {
        throw InvalidArgument("eigvals_hermitian: matrix is not Hermitian");
    }
    CMatrix sym = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double min_eigenvalue(const CMatrix &h) { return eigvals_hermitian(h)(0); }

RVector singular_values(const CMatrix &m) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues();
}

RVector singular_values(const RMatrix &m) {
    Eigen::JacobiSVD<RMatrix> svd(m);
    return svd.singularValues();
}

double trace_norm(const CMatrix &m) { return singular_values(m).sum(); }
double trace_norm(const RMatrix &m) { return singular_values(m).sum(); }

CMatrix sqrtm_psd(const CMatrix &h) {
    if (!is_hermitian(h, 1e-8)) {
        throw InvalidArgument("sqrtm_psd: matrix is not Hermitian");
    }
    CMatrix sym = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    RVector lambda = solver.eigenvalues();
    // Eigenvalues at the rounding floor count as zero, like negative ones.
    double floor = static_cast<double>(h.rows()) * std::numeric_limits<double>::epsilon() *
                   std::max(1.0, lambda.cwiseAbs().maxCoeff());
    RVector root = lambda.unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
    const CMatrix &v = solver.eigenvectors();
    return v * root.cast<Complex>().asDiagonal() * v.adjoint();
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (!(rho.shape() == sigma.shape())) {
        throw InvalidArgument("fidelity: shape mismatch");
    }
    // tr sqrt(sqrt(rho) sigma sqrt(rho)) equals the trace norm of
    // sqrt(rho) sqrt(sigma), which is symmetric in its arguments.
    double f = trace_norm(CMatrix(sqrtm_psd(rho.matrix()) * sqrtm_psd(sigma.matrix())));
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace rmt
