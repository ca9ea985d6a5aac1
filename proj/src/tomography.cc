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

#include "rmt/tomography.h"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "rmt/bloch.h"
#include "rmt/errors.h"
#include "rmt/parallel.h"
#include "rmt/states.h"

namespace rmt {

namespace {

constexpr int kQutrit = 3;
constexpr int kTwoQutrits = kQutrit * kQutrit;

const SubsystemShape &two_qutrits() {
    static const SubsystemShape shape = SubsystemShape::uniform(2, kQutrit);
    return shape;
}

CVector setting_vector(const TomographySetting &s) {
    if (s.left < 0 || s.left > 8 || s.right < 0 || s.right > 8) {
        throw InvalidArgument("tomography setting indices must be in 0..8");
    }
    static const std::array<CVector, 9> bases = tomography_bases();
    return kron(bases[static_cast<size_t>(s.left)], bases[static_cast<size_t>(s.right)]);
}

void check_records(const std::vector<CountRecord> &records) {
    if (records.empty()) {
        throw InvalidArgument("no tomography records");
    }
    for (const CountRecord &r : records) {
        if (!(r.count >= 0.0) || !std::isfinite(r.count)) {
            throw InvalidArgument("tomography counts must be finite and non-negative");
        }
        if (!(r.exposure > 0.0) || !std::isfinite(r.exposure)) {
            throw InvalidArgument("tomography exposure must be positive");
        }
        setting_vector(r.setting);
    }
}

// Hermitian operator basis {lambda_a (x) lambda_b} with lambda_0 = I.
const std::vector<CMatrix> &operator_basis() {
    static const std::vector<CMatrix> basis = [] {
        std::vector<CMatrix> local{CMatrix::Identity(kQutrit, kQutrit)};
        for (const CMatrix &l : gell_mann_basis(kQutrit).lambdas) local.push_back(l);
        std::vector<CMatrix> out;
        for (const CMatrix &a : local) {
            for (const CMatrix &b : local) out.push_back(kron(a, b));
        }
        return out;
    }();
    return basis;
}

CMatrix hermitian_power(const CMatrix &h, double power) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    RVector ev = es.eigenvalues();
    if (ev.minCoeff() <= 0.0) {
        throw InvalidArgument("tomography settings do not span the state space");
    }
    RVector scaled = ev.array().pow(power);
    return es.eigenvectors() * scaled.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix normalized_hermitian(const CMatrix &m) {
    CMatrix h = 0.5 * (m + m.adjoint());
    return h / h.trace().real();
}

}  // namespace

std::array<CVector, 9> tomography_bases() {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    std::array<CVector, 9> u;
    for (auto &v : u) v = CVector::Zero(kQutrit);
    u[0](0) = 1.0;
    u[1](1) = 1.0;
    u[2](2) = 1.0;
    u[3](0) = s, u[3](1) = s;
    u[4](0) = s, u[4](1) = i * s;
    u[5](1) = s, u[5](2) = s;
    u[6](1) = s, u[6](2) = i * s;
    u[7](0) = s, u[7](2) = s;
    u[8](0) = s, u[8](2) = i * s;
    return u;
}

std::vector<TomographySetting> all_settings() {
    std::vector<TomographySetting> out;
    for (int a = 0; a < 9; ++a) {
        for (int b = 0; b < 9; ++b) out.push_back({a, b});
    }
    return out;
}

CMatrix setting_projector(const TomographySetting &s) {
    CVector v = setting_vector(s);
    return v * v.adjoint();
}

std::vector<CountRecord> expected_tomography_counts(const DensityMatrix &rho, double shots_per_setting,
                                                    double noise_p, NoiseModel model) {
    if (!(rho.shape() == two_qutrits())) {
        throw InvalidArgument("tomography needs a two-qutrit state");
    }
    if (!(shots_per_setting > 0.0) || !std::isfinite(shots_per_setting)) {
        throw InvalidArgument("shots per setting must be positive");
    }
    if (!(noise_p >= 0.0 && noise_p <= 1.0)) {
        throw InvalidArgument("noise level must lie in [0, 1]");
    }
    double rate = shots_per_setting;
    if (model == NoiseModel::kAdditive) {
        if (noise_p >= 1.0) {
            throw InvalidArgument("additive noise needs p < 1");
        }
        rate /= 1.0 - noise_p;
    }
    CMatrix mixed = white_noise_mix(rho, noise_p).matrix();
    std::vector<CountRecord> out;
    for (const TomographySetting &s : all_settings()) {
        CVector v = setting_vector(s);
        double prob = std::max(0.0, (v.adjoint() * mixed * v)(0, 0).real());
        out.push_back({s, rate * prob, shots_per_setting});
    }
    return out;
}

std::vector<CountRecord> simulate_tomography_counts(const DensityMatrix &rho, double shots_per_setting,
                                                    double noise_p, Rng &rng, NoiseModel model) {
    std::vector<CountRecord> out = expected_tomography_counts(rho, shots_per_setting, noise_p, model);
    for (CountRecord &r : out) {
        if (r.count > 0.0) {
            std::poisson_distribution<int64_t> draw(r.count);
            r.count = static_cast<double>(draw(rng));
        }
    }
    return out;
}

CMatrix linear_inversion(const std::vector<CountRecord> &records) {
    check_records(records);
    const std::vector<CMatrix> &basis = operator_basis();
    const auto n_params = static_cast<Index>(basis.size());
    RMatrix a(static_cast<Index>(records.size()), n_params);
    RVector f(static_cast<Index>(records.size()));
    for (size_t r = 0; r < records.size(); ++r) {
        CVector v = setting_vector(records[r].setting);
        for (Index k = 0; k < n_params; ++k) {
            a(static_cast<Index>(r), k) = (v.adjoint() * basis[static_cast<size_t>(k)] * v)(0, 0).real();
        }
        f(static_cast<Index>(r)) = records[r].count / records[r].exposure;
    }
    Eigen::ColPivHouseholderQR<RMatrix> qr(a);
    if (qr.rank() < n_params) {
        throw InvalidArgument("tomography settings are not informationally complete");
    }
    RVector x = qr.solve(f);
    CMatrix rho = CMatrix::Zero(kTwoQutrits, kTwoQutrits);
    for (Index k = 0; k < n_params; ++k) rho += x(k) * basis[static_cast<size_t>(k)];
    if (!(std::abs(rho.trace().real()) > 0.0)) {
        throw InvalidArgument("linear inversion produced a traceless operator");
    }
    return normalized_hermitian(rho);
}

ReconstructionResult mle_reconstruct(const std::vector<CountRecord> &records, int max_iter, double tol) {
    check_records(records);
    if (max_iter < 1) {
        throw InvalidArgument("max_iter must be >= 1");
    }
    const auto n_rec = static_cast<Index>(records.size());
    double total = 0.0;
    CMatrix h = CMatrix::Zero(kTwoQutrits, kTwoQutrits);
    for (const CountRecord &r : records) {
        h += r.exposure * setting_projector(r.setting);
        total += r.count;
    }
    if (!(total > 0.0)) {
        throw InvalidArgument("maximum likelihood needs at least one count");
    }
    const CMatrix h_inv_sqrt = hermitian_power(h, -0.5);

    // Row s holds the transposed, flattened POVM element, so tr(sigma E_s) is
    // a matrix-vector product with the flattened sigma.
    constexpr Index kFlat = kTwoQutrits * kTwoQutrits;
    CMatrix povm(n_rec, kFlat);
    RVector freq(n_rec), counts(n_rec);
    for (Index s = 0; s < n_rec; ++s) {
        const CountRecord &r = records[static_cast<size_t>(s)];
        CMatrix e = r.exposure * h_inv_sqrt * setting_projector(r.setting) * h_inv_sqrt;
        CMatrix et = e.transpose();
        povm.row(s) = Eigen::Map<const CVector>(et.data(), kFlat).transpose();
        counts(s) = r.count;
        freq(s) = r.count / total;
    }

    auto probs = [&](const CMatrix &sigma) -> RVector {
        RVector q = (povm * Eigen::Map<const CVector>(sigma.data(), kFlat)).real();
        return q.cwiseMax(std::numeric_limits<double>::min());
    };
    auto log_likelihood = [&](const RVector &q) {
        double l = 0.0;
        for (Index s = 0; s < n_rec; ++s) {
            if (counts(s) > 0.0) l += counts(s) * std::log(q(s));
        }
        return l;
    };

    CMatrix sigma = h / h.trace().real();
    RVector q = probs(sigma);
    double current = log_likelihood(q);
    ReconstructionResult result{DensityMatrix::maximally_mixed(two_qutrits()), current, 0, false, {current}};
    const CMatrix identity = CMatrix::Identity(kTwoQutrits, kTwoQutrits);
    for (int iter = 1; iter <= max_iter; ++iter) {
        CVector weights = (freq.array() / q.array()).cast<Complex>();
        CVector flat = povm.transpose() * weights;
        // The rows hold transposed elements, so this reshapes to R^T.
        CMatrix rop = Eigen::Map<const CMatrix>(flat.data(), kTwoQutrits, kTwoQutrits).transpose();
        rop = 0.5 * (rop + rop.adjoint());

        CMatrix next = normalized_hermitian(rop * sigma * rop);
        RVector q_next = probs(next);
        double l_next = log_likelihood(q_next);
        // Diluted steps (I + eps R) / (1 + eps) with eps halved until the
        // likelihood no longer drops.
        for (double eps = 1.0; l_next < current && eps > 1e-12; eps *= 0.5) {
            CMatrix step = (identity + eps * rop) / (1.0 + eps);
            next = normalized_hermitian(step * sigma * step);
            q_next = probs(next);
            l_next = log_likelihood(q_next);
        }
        if (l_next < current) {
            result.iterations = iter;
            result.converged = true;
            break;
        }
        double gain = l_next - current;
        sigma = next;
        q = q_next;
        current = l_next;
        result.trace.push_back(current);
        result.iterations = iter;
        if (gain < tol) {
            result.converged = true;
            break;
        }
    }
    CMatrix rho = normalized_hermitian(h_inv_sqrt * sigma * h_inv_sqrt);
    result.rho_hat = DensityMatrix(rho, two_qutrits());
    result.log_likelihood = current;
    return result;
}

double noise_level_estimate(double n_with_noise, double n_without) {
    if (!(n_with_noise > 0.0) || !(n_without > 0.0)) {
        throw InvalidArgument("noise estimate needs positive totals");
    }
    if (n_without > n_with_noise) {
        throw InvalidArgument("noise-free total exceeds the noisy total");
    }
    return 1.0 - n_without / n_with_noise;
}

double computational_basis_total(const std::vector<CountRecord> &records) {
    double total = 0.0;
    int seen = 0;
    for (const CountRecord &r : records) {
        if (r.setting.left < 3 && r.setting.right < 3) {
            total += r.count;
            ++seen;
        }
    }
    if (seen == 0) {
        throw InvalidArgument("no computational-basis settings in the records");
    }
    return total;
}

std::vector<std::vector<CountRecord>> poisson_resample(const std::vector<CountRecord> &records, int replicas,
                                                       uint64_t seed) {
    check_records(records);
    if (replicas < 1) {
        throw InvalidArgument("need at least one replica");
    }
    std::vector<std::vector<CountRecord>> out(static_cast<size_t>(replicas), records);
    for (size_t k = 0; k < out.size(); ++k) {
        Rng rng = make_stream(seed, StreamDomain::kBootstrap, k);
        for (CountRecord &r : out[k]) {
            if (r.count > 0.0) {
                std::poisson_distribution<int64_t> draw(r.count);
                r.count = static_cast<double>(draw(rng));
            }
        }
    }
    return out;
}

BootstrapSummary bootstrap_errorbars(const std::vector<CountRecord> &records, int replicas,
                                     const RecordStatistic &statistic, uint64_t seed) {
    if (replicas < 2) {
        throw InvalidArgument("bootstrap needs at least two replicas");
    }
    const auto resampled = poisson_resample(records, replicas, seed);
    BootstrapSummary out;
    out.values.assign(resampled.size(), 0.0);
    parallel_for(resampled.size(), [&](size_t k) { out.values[k] = statistic(resampled[k]); });
    double sum = 0.0;
    for (double v : out.values) sum += v;
    out.mean = sum / replicas;
    double sq = 0.0;
    for (double v : out.values) sq += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(sq / (replicas - 1));
    return out;
}

void write_records_csv(std::ostream &out, const std::vector<CountRecord> &records) {
    out << "setting_left,setting_right,count,exposure\n";
    out.precision(17);
    for (const CountRecord &r : records) {
        out << r.setting.left << ',' << r.setting.right << ',' << r.count << ',' << r.exposure << '\n';
    }
}

std::vector<CountRecord> read_records_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw InvalidArgument("empty tomography CSV");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "setting_left,setting_right,count,exposure") {
        throw InvalidArgument("unexpected tomography CSV header: " + line);
    }
    std::vector<CountRecord> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell[4];
        for (int k = 0; k < 4; ++k) {
            if (!std::getline(row, cell[k], k < 3 ? ',' : '\n')) {
                throw InvalidArgument("malformed tomography CSV line " + std::to_string(line_no));
            }
        }
        try {
            CountRecord r;
            r.setting.left = std::stoi(cell[0]);
            r.setting.right = std::stoi(cell[1]);
            r.count = std::stod(cell[2]);
            r.exposure = std::stod(cell[3]);
            out.push_back(r);
        } catch (const std::logic_error &) {
            throw InvalidArgument("malformed tomography CSV line " + std::to_string(line_no));
        }
    }
    check_records(out);
    return out;
}

}  // namespace rmt
