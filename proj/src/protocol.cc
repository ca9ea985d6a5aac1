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

#include "rmt/protocol.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "rmt/errors.h"
#include "rmt/parallel.h"

namespace rmt {

namespace {

struct MeanAndError {
    double mean = 0.0;
    double std_error = 0.0;
};

// Sums in index order so results are independent of thread scheduling.
MeanAndError summarize(const std::vector<double> &xs) {
    const auto m = static_cast<double>(xs.size());
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
    if (xs.size() < 2) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(ss / (m - 1.0) / m)};
}

MomentEstimate to_estimate(const std::vector<double> &xs, const ProtocolConfig &cfg, double scale = 1.0) {
    MeanAndError s = summarize(xs);
    return {s.mean * scale, s.std_error * scale, cfg.num_unitaries, cfg.shots_per_unitary, cfg.seed};
}

std::vector<double> observable_for(const SubsystemShape &shape, const ProtocolConfig &cfg) {
    const auto &dims = shape.dims();
    if (std::adjacent_find(dims.begin(), dims.end(), std::not_equal_to<>()) != dims.end()) {
        throw InvalidArgument("randomized measurements need equal local dimensions");
    }
    std::vector<double> tau = cfg.observable.empty() ? default_observable(dims[0]) : cfg.observable;
    if (static_cast<int>(tau.size()) != dims[0]) {
        throw InvalidArgument("observable has " + std::to_string(tau.size()) + " eigenvalues for dimension " +
                              std::to_string(dims[0]));
    }
    return tau;
}

void check_subset(const SubsystemShape &shape, PartySet subset) {
    if (subset.empty() || subset.span() > shape.num_parties()) {
        throw InvalidArgument("subset " + subset.label() + " is not valid for " +
                              std::to_string(shape.num_parties()) + " parties");
    }
}

// Runs M rounds and returns, for every requested subset, the per-round
// unbiased estimates of the squared expectation.
std::vector<std::vector<double>> run_second_moment_rounds(const DensityMatrix &rho, const std::vector<PartySet> &subsets,
                                                          const ProtocolConfig &cfg) {
    cfg.validate();
    const SubsystemShape &shape = rho.shape();
    std::vector<double> tau = observable_for(shape, cfg);
    std::vector<std::vector<double>> values;
    for (PartySet s : subsets) {
        check_subset(shape, s);
        values.push_back(outcome_values(shape, s, tau));
    }

    const auto m = static_cast<size_t>(cfg.num_unitaries);
    std::vector<std::vector<double>> e2(subsets.size(), std::vector<double>(m));
    parallel_for(m, [&](size_t round) {
        Rng rng = make_stream(cfg.seed, StreamDomain::kUnitaries, round);
        std::vector<CMatrix> us;
        for (int p = 0; p < shape.num_parties(); ++p) {
            us.push_back(haar_unitary(shape.dim(p), rng));
        }
        ShotCounts counts = sample_counts(outcome_probs(rho, us), cfg.shots_per_unitary, rng);
        for (size_t k = 0; k < subsets.size(); ++k) {
            GroupedOutcomes g = group_outcomes(counts, values[k]);
            e2[k][round] = estimate_E2(g.counts, g.values);
        }
    });
    return e2;
}

}  // namespace

void ProtocolConfig::validate() const {
    if (num_unitaries < 1) {
        throw InvalidArgument("number of unitaries must be >= 1");
    }
    if (shots_per_unitary < 2) {
        throw InvalidArgument("shots per unitary must be >= 2");
    }
}

std::vector<double> default_observable(int d) {
    if (d == 2) {
        return {1.0, -1.0};
    }
    if (d == 3) {
        const double a = std::sqrt(1.5);
        return {a, 0.0, -a};
    }
    throw InvalidArgument("no default observable for local dimension " + std::to_string(d));
}

CMatrix haar_unitary(int d, Rng &rng) {
    if (d < 2) {
        throw InvalidArgument("haar_unitary needs d >= 2");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix z(d, d);
    for (Index j = 0; j < d; ++j) {
        for (Index i = 0; i < d; ++i) {
            double re = normal(rng);
            double im = normal(rng);
            z(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix &r = qr.matrixQR();
    for (Index k = 0; k < d; ++k) {
        Complex diag = r(k, k);
        double mag = std::abs(diag);
        q.col(k) *= mag > 0.0 ? diag / mag : Complex(1.0);
    }
    return q;
}

RVector outcome_probs(const DensityMatrix &rho, const std::vector<CMatrix> &unitaries) {
    const SubsystemShape &shape = rho.shape();
    if (static_cast<int>(unitaries.size()) != shape.num_parties()) {
        throw InvalidArgument("need one unitary per party");
    }
    for (int p = 0; p < shape.num_parties(); ++p) {
        const CMatrix &u = unitaries[static_cast<size_t>(p)];
        if (u.rows() != shape.dim(p) || u.cols() != shape.dim(p)) {
            throw InvalidArgument("unitary for party " + std::to_string(p) + " has the wrong dimension");
        }
    }
    CMatrix u = kron_all(unitaries);
    RVector p = (u * rho.matrix() * u.adjoint()).diagonal().real();
    return p.cwiseMax(0.0);
}

ShotCounts sample_counts(const RVector &probs, int64_t n, Rng &rng) {
    if (n < 0) {
        throw InvalidArgument("number of shots must be non-negative");
    }
    ShotCounts out{std::vector<int64_t>(static_cast<size_t>(probs.size()), 0), n};
    double remaining_mass = probs.sum();
    int64_t remaining = n;
    for (Index i = 0; i < probs.size() && remaining > 0; ++i) {
        if (i == probs.size() - 1) {
            out.counts[static_cast<size_t>(i)] = remaining;
            break;
        }
        double q = remaining_mass > 0.0 ? std::clamp(probs(i) / remaining_mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<int64_t> draw(remaining, q);
        int64_t k = draw(rng);
        out.counts[static_cast<size_t>(i)] = k;
        remaining -= k;
        remaining_mass -= probs(i);
    }
    return out;
}

std::vector<double> outcome_values(const SubsystemShape &shape, PartySet subset, const std::vector<double> &observable) {
    check_subset(shape, subset);
    std::vector<double> values(static_cast<size_t>(shape.total_dim()));
    for (Index i = 0; i < shape.total_dim(); ++i) {
        std::vector<int> digits = shape.digits(i);
        double x = 1.0;
        for (int p : subset.members()) {
            if (shape.dim(p) != static_cast<int>(observable.size())) {
                throw InvalidArgument("observable does not match the dimension of party " + std::to_string(p));
            }
            x *= observable[static_cast<size_t>(digits[static_cast<size_t>(p)])];
        }
        values[static_cast<size_t>(i)] = x;
    }
    return values;
}

GroupedOutcomes group_outcomes(const ShotCounts &counts, const std::vector<double> &values) {
    if (counts.counts.size() != values.size()) {
        throw InvalidArgument("one value per outcome is required");
    }
    std::vector<size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
    GroupedOutcomes g;
    g.counts.total = counts.total;
    for (size_t idx : order) {
        if (g.values.empty() || std::abs(values[idx] - g.values.back()) > 1e-12) {
            g.values.push_back(values[idx]);
            g.counts.counts.push_back(0);
        }
        g.counts.counts.back() += counts.counts[idx];
    }
    return g;
}

double estimate_E2(const ShotCounts &counts, const std::vector<double> &values) {
    const int64_t n_total = counts.total;
    if (n_total < 2) {
        throw InvalidArgument("estimate_E2 needs at least two shots");
    }
    if (counts.counts.size() != values.size()) {
        throw InvalidArgument("one value per outcome is required");
    }
    const auto n = static_cast<double>(n_total);
    const size_t k = values.size();
    std::vector<double> p(k);
    for (size_t i = 0; i < k; ++i) {
        p[i] = static_cast<double>(counts.counts[i]) / n;
    }
    double e2 = 0.0;
    for (size_t i = 0; i < k; ++i) {
        double p_sq = (n * p[i] * p[i] - p[i]) / (n - 1.0);
        e2 += values[i] * values[i] * p_sq;
        for (size_t j = i + 1; j < k; ++j) {
            double p_ij = n / (n - 1.0) * p[i] * p[j];
            e2 += 2.0 * values[i] * values[j] * p_ij;
        }
    }
    return e2;
}

double estimate_E4(const ShotCounts &counts, const std::vector<double> &values) {
    if (counts.total < 4) {
        throw InvalidArgument("estimate_E4 needs at least four shots");
    }
    if (counts.counts.size() != values.size()) {
        throw InvalidArgument("one value per outcome is required");
    }
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (size_t i = 0; i < values.size(); ++i) {
        const double c = static_cast<double>(counts.counts[i]);
        const double x = values[i];
        s1 += c * x;
        s2 += c * x * x;
        s3 += c * x * x * x;
        s4 += c * x * x * x * x;
    }
    const auto n = static_cast<double>(counts.total);
    double distinct = s1 * s1 * s1 * s1 - 6.0 * s1 * s1 * s2 + 3.0 * s2 * s2 + 8.0 * s1 * s3 - 6.0 * s4;
    return distinct / (n * (n - 1.0) * (n - 2.0) * (n - 3.0));
}

MomentEstimate estimate_R2(const DensityMatrix &rho, PartySet subset, const ProtocolConfig &cfg) {
    auto e2 = run_second_moment_rounds(rho, {subset}, cfg);
    return to_estimate(e2.front(), cfg);
}

std::map<PartySet, MomentEstimate> estimate_R2_subsets(const DensityMatrix &rho, const ProtocolConfig &cfg) {
    std::vector<PartySet> subsets =
        cfg.subsets.empty() ? all_nonempty_subsets(rho.shape().num_parties()) : cfg.subsets;
    auto e2 = run_second_moment_rounds(rho, subsets, cfg);
    std::map<PartySet, MomentEstimate> out;
    for (size_t k = 0; k < subsets.size(); ++k) {
        out[subsets[k]] = to_estimate(e2[k], cfg);
    }
    return out;
}

double analytic_R2(const DensityMatrix &rho, PartySet subset) {
    check_subset(rho.shape(), subset);
    PauliCoefficients c = pauli_coeffs(rho);
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) {
                bool support_matches = (i != 0) == subset.contains(0) && (j != 0) == subset.contains(1) &&
                                       (k != 0) == subset.contains(2);
                if (support_matches) {
                    sum += c(i, j, k) * c(i, j, k);
                }
            }
        }
    }
    return sum / std::pow(3.0, subset.size());
}

SectorLengthEstimate estimate_sector_lengths(const DensityMatrix &rho, const ProtocolConfig &cfg) {
    if (!(rho.shape() == SubsystemShape::uniform(3, 2))) {
        throw InvalidArgument("sector lengths need a three-qubit state");
    }
    std::vector<PartySet> subsets = all_nonempty_subsets(3);
    auto e2 = run_second_moment_rounds(rho, subsets, cfg);
    const auto m = static_cast<size_t>(cfg.num_unitaries);
    std::vector<double> a1(m, 0.0), a2(m, 0.0), a3(m, 0.0);
    for (size_t k = 0; k < subsets.size(); ++k) {
        for (size_t r = 0; r < m; ++r) {
            switch (subsets[k].size()) {
                case 1: a1[r] += 3.0 * e2[k][r]; break;
                case 2: a2[r] += 9.0 * e2[k][r]; break;
                default: a3[r] += 27.0 * e2[k][r]; break;
            }
        }
    }
    std::vector<double> bisep(m);
    for (size_t r = 0; r < m; ++r) {
        bisep[r] = a2[r] + a3[r] - 3.0 * (1.0 + a1[r]);
    }
    MeanAndError s1 = summarize(a1), s2 = summarize(a2), s3 = summarize(a3);
    return {{s1.mean, s2.mean, s3.mean},
            {s1.std_error, s2.std_error, s3.std_error},
            summarize(bisep).std_error,
            cfg.num_unitaries,
            cfg.shots_per_unitary,
            cfg.seed};
}

double haar_single_qudit_moment(const std::vector<double> &observable, int t) {
    if (t < 1 || t > 8) {
        throw InvalidArgument("Haar moment order must be in 1..8");
    }
    const auto d = static_cast<double>(observable.size());
    std::vector<double> power_traces(static_cast<size_t>(t) + 1, 0.0);
    for (int k = 1; k <= t; ++k) {
        for (double x : observable) {
            power_traces[static_cast<size_t>(k)] += std::pow(x, k);
        }
    }
    std::vector<int> perm(static_cast<size_t>(t));
    std::iota(perm.begin(), perm.end(), 0);
    double total = 0.0;
    do {
        std::vector<bool> seen(perm.size(), false);
        double term = 1.0;
        for (size_t start = 0; start < perm.size(); ++start) {
            if (seen[start]) continue;
            int len = 0;
            for (size_t i = start; !seen[i]; i = static_cast<size_t>(perm[i])) {
                seen[i] = true;
                ++len;
            }
            term *= power_traces[static_cast<size_t>(len)];
        }
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    double rising = 1.0;
    for (int k = 0; k < t; ++k) {
        rising *= d + k;
    }
    return total / rising;
}

MomentPairEstimate estimate_bipartite_moments(const DensityMatrix &rho, const ProtocolConfig &cfg) {
    cfg.validate();
    const SubsystemShape &shape = rho.shape();
    if (shape.num_parties() != 2) {
        throw InvalidArgument("bipartite moments need a two-party state");
    }
    if (cfg.shots_per_unitary < 4) {
        throw InvalidArgument("fourth-moment estimation needs at least four shots per unitary");
    }
    std::vector<double> tau = observable_for(shape, cfg);
    std::vector<double> values = outcome_values(shape, PartySet(0b11), tau);
    const auto m = static_cast<size_t>(cfg.num_unitaries);
    std::vector<double> e2(m), e4(m);
    parallel_for(m, [&](size_t round) {
        Rng rng = make_stream(cfg.seed, StreamDomain::kUnitaries, round);
        std::vector<CMatrix> us{haar_unitary(shape.dim(0), rng), haar_unitary(shape.dim(1), rng)};
        ShotCounts counts = sample_counts(outcome_probs(rho, us), cfg.shots_per_unitary, rng);
        GroupedOutcomes g = group_outcomes(counts, values);
        e2[round] = estimate_E2(g.counts, g.values);
        e4[round] = estimate_E4(g.counts, g.values);
    });
    const double h2 = haar_single_qudit_moment(tau, 2);
    const double h4 = haar_single_qudit_moment(tau, 4);
    return {to_estimate(e2, cfg, 1.0 / (h2 * h2)), to_estimate(e4, cfg, 1.0 / (h4 * h4))};
}

HaarOracleResult haar_moment_oracle(const DensityMatrix &rho, int num_samples, uint64_t seed) {
    const SubsystemShape &shape = rho.shape();
    if (shape.num_parties() != 2 || shape.dim(0) != shape.dim(1)) {
        throw InvalidArgument("Haar moment oracle needs two parties of equal dimension");
    }
    if (num_samples < 2) {
        throw InvalidArgument("Haar moment oracle needs at least two samples");
    }
    const int d = shape.dim(0);
    std::vector<double> tau_diag = default_observable(d);
    CMatrix tau = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        tau(k, k) = tau_diag[static_cast<size_t>(k)];
    }
    const auto m = static_cast<size_t>(num_samples);
    std::vector<double> v2(m), v4(m);
    parallel_for(m, [&](size_t i) {
        Rng rng = make_stream(seed, StreamDomain::kOracle, i);
        CMatrix u = haar_unitary(d, rng);
        CMatrix v = haar_unitary(d, rng);
        CMatrix obs = kron(CMatrix(u * tau * u.adjoint()), CMatrix(v * tau * v.adjoint()));
        double e = rho.matrix().cwiseProduct(obs.transpose()).sum().real();
        v2[i] = e * e;
        v4[i] = e * e * e * e;
    });
    const double h2 = haar_single_qudit_moment(tau_diag, 2);
    const double h4 = haar_single_qudit_moment(tau_diag, 4);
    ProtocolConfig provenance;
    provenance.num_unitaries = num_samples;
    provenance.shots_per_unitary = 0;
    provenance.seed = seed;

    HaarOracleResult result;
    result.r2 = to_estimate(v2, provenance, 1.0 / (h2 * h2));
    result.r4 = to_estimate(v4, provenance, 1.0 / (h4 * h4));
    result.formula = moments_from_T(bloch_decompose(rho).T, d);
    auto z = [](const MomentEstimate &est, double exact) {
        double diff = est.value - exact;
        if (est.std_error > 0.0) return diff / est.std_error;
        return std::abs(diff) < 1e-12 ? 0.0 : std::copysign(INFINITY, diff);
    };
    result.z2 = z(result.r2, result.formula.r2);
    result.z4 = z(result.r4, result.formula.r4);
    return result;
}

void require_consistent(const HaarOracleResult &result, double max_sigma) {
    if (std::abs(result.z2) > max_sigma || std::abs(result.z4) > max_sigma) {
        std::ostringstream msg;
        msg << "moment formula disagrees with the Haar average: r2 " << result.r2.value << " vs "
            << result.formula.r2 << " (z=" << result.z2 << "), r4 " << result.r4.value << " vs "
            << result.formula.r4 << " (z=" << result.z4 << ")";
        throw ConsistencyError(msg.str());
    }
}

}  // namespace rmt
