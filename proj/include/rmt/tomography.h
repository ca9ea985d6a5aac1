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

// Simulated two-qutrit state tomography with the 81 product projectors
// |u_i u_j><u_i u_j|.

#ifndef RMT_TOMOGRAPHY_H
#define RMT_TOMOGRAPHY_H

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "rmt/linalg.h"
#include "rmt/rng.h"

namespace rmt {

/// u0..u2 computational; u3..u8 the equal superpositions (|a> + |b>)/sqrt(2)
/// and (|a> + i|b>)/sqrt(2) for the pairs (0,1), (1,2), (0,2).
std::array<CVector, 9> tomography_bases();

struct TomographySetting {
    int left = 0;
    int right = 0;

    bool operator==(const TomographySetting &) const = default;
};

/// One measured setting. `count` is integral for sampled data but may hold
/// an expected value when records are built from exact probabilities.
struct CountRecord {
    TomographySetting setting;
    double count = 0.0;
    double exposure = 0.0;
};

/// All 81 settings, left index major.
std::vector<TomographySetting> all_settings();

/// |u_left u_right><u_left u_right|.
CMatrix setting_projector(const TomographySetting &s);

enum class NoiseModel {
    /// The state is replaced by (1-p) rho + p I/9 at fixed exposure; the total
    /// rate does not change with p.
    kMixing,
    /// White noise adds counts on top of an unchanged signal, so the detected
    /// state is still the (1-p) rho + p I/9 mixture but every rate grows by
    /// 1/(1-p). Requires p < 1.
    kAdditive,
};

/// Expected counts shots * <u_i u_j|rho(p)|u_i u_j> (times 1/(1-p) for the
/// additive model) for every setting.
std::vector<CountRecord> expected_tomography_counts(const DensityMatrix &rho, double shots_per_setting,
                                                    double noise_p, NoiseModel model = NoiseModel::kMixing);

/// Poisson draws around expected_tomography_counts().
std::vector<CountRecord> simulate_tomography_counts(const DensityMatrix &rho, double shots_per_setting,
                                                    double noise_p, Rng &rng,
                                                    NoiseModel model = NoiseModel::kMixing);

/// Least-squares operator matching the observed frequencies count/exposure,
/// rescaled to unit trace. Hermitian, not necessarily PSD. Throws
/// InvalidArgument if the settings are not informationally complete.
CMatrix linear_inversion(const std::vector<CountRecord> &records);

struct ReconstructionResult {
    DensityMatrix rho_hat;
    double log_likelihood = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Log-likelihood after each accepted iteration.
    std::vector<double> trace;
};

/// Maximum-likelihood estimate by the iterative R rho R map, started at I/9.
/// Exposure differences and the non-tight projector set are absorbed by
/// working with sigma = H^1/2 rho H^1/2 / tr(.), where H = sum_s e_s Pi_s,
/// for which the settings form a complete measurement. A full step that
/// lowers the likelihood is replaced by a diluted step whose weight is halved
/// until the likelihood increases. Stops when the gain drops below `tol`.
ReconstructionResult mle_reconstruct(const std::vector<CountRecord> &records, int max_iter = 5000,
                                     double tol = 1e-10);

/// p = 1 - n_without / n_with_noise.
double noise_level_estimate(double n_with_noise, double n_without);

/// Total counts over the nine computational-basis settings. These projectors
/// sum to the identity, so the total does not depend on the state.
double computational_basis_total(const std::vector<CountRecord> &records);

struct BootstrapSummary {
    double mean = 0.0;
    double std = 0.0;
    std::vector<double> values;
};

/// `replicas` copies of `records` with every count redrawn from a Poisson law
/// whose mean is the observed count. Replica k uses the stream (seed, k).
std::vector<std::vector<CountRecord>> poisson_resample(const std::vector<CountRecord> &records, int replicas,
                                                       uint64_t seed);

using RecordStatistic = std::function<double(const std::vector<CountRecord> &)>;

/// Evaluates `statistic` on poisson_resample() replicas, concurrently.
BootstrapSummary bootstrap_errorbars(const std::vector<CountRecord> &records, int replicas,
                                     const RecordStatistic &statistic, uint64_t seed);

/// CSV with header setting_left,setting_right,count,exposure.
void write_records_csv(std::ostream &out, const std::vector<CountRecord> &records);
std::vector<CountRecord> read_records_csv(std::istream &in);

}  // namespace rmt

#endif
