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

// Batch experiments: the GHZ-W criterion sweep and the chessboard noise sweep.

#ifndef RMT_EXPERIMENTS_H
#define RMT_EXPERIMENTS_H

#include <cstdint>
#include <string>
#include <vector>

#include "rmt/protocol.h"
#include "rmt/tomography.h"

namespace rmt {

/// Named numeric columns, one row per grid point. Flags are stored as 0/1.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    size_t column(const std::string &name) const;
    double at(size_t row, const std::string &name) const;
    std::vector<double> column_values(const std::string &name) const;

    bool operator==(const Table &) const = default;
};

/// {lo, lo + step, ...} up to hi inclusive, tolerant to rounding in the
/// last step. Throws unless step > 0, lo <= hi and both lie in [0, 1].
std::vector<double> make_grid(double lo, double hi, double step);

struct GhzwSweepConfig {
    double g_min = 0.0;
    double g_max = 1.0;
    double g_step = 0.05;
    /// Run the randomized-measurement estimate in addition to the exact values.
    bool estimate = true;
    /// Independent repetitions of the whole protocol per grid point. With
    /// more than one, the estimate is the mean over repetitions and its error
    /// is their standard deviation divided by sqrt(repeats).
    int repeats = 1;
    ProtocolConfig protocol;

    void validate() const;
};

/// Columns: g, A1, A2, A3, criterion_I, criterion_II, concurrence_sq_sum,
/// g_C, g_tau and, with `estimate`, A1_est, A1_err, A2_est, A2_err, A3_est,
/// A3_err, criterion_I_est, criterion_I_err, criterion_II_est,
/// criterion_II_err. Criterion I is A2 + A3 - 3(1 + A1), Criterion II is
/// A3 - 3. Grid point k, repetition r uses the protocol seed
/// derive_seed(derive_seed(seed, k), r), or derive_seed(seed, k) when
/// repeats == 1.
Table run_ghzw_sweep(const GhzwSweepConfig &cfg);

/// The noise levels at which the chessboard tomography was taken.
std::vector<double> chessboard_reference_points();

struct ChessboardSweepConfig {
    /// Explicit noise levels; when empty the uniform grid below is used.
    std::vector<double> p_values;
    double p_min = 0.0;
    double p_max = 0.22;
    double p_step = 0.02;
    /// Simulated tomography and bootstrap at every noise level.
    bool tomography = false;
    double shots_per_setting = 1e5;
    int bootstrap_replicas = 100;
    uint64_t seed = 0;

    void validate() const;
    std::vector<double> grid() const;
};

/// Columns: p, min_pt_eigenvalue, r2, r4, bound, margin, detected,
/// de_vicente and, with `tomography`, fidelity, fidelity_err, min_pt_est,
/// min_pt_err, margin_est, margin_err, p_est.
Table run_chessboard_sweep(const ChessboardSweepConfig &cfg);

/// r4 - bound for the ideal noisy chessboard state.
double chessboard_margin(double p);

/// Largest noise level with r4 below the bound, by bisection on [0, 1] to
/// within `tol`.
double chessboard_detection_threshold(double tol = 1e-3);

struct TomographyRoundTrip {
    double p_true = 0.0;
    double p_est = 0.0;
    double fidelity = 0.0;
    BootstrapSummary fidelity_bootstrap;
    BootstrapSummary min_pt_bootstrap;
    BootstrapSummary margin_bootstrap;
    ReconstructionResult reconstruction;
};

/// Simulates counts for rho_ch(p) and for the noise-free state, both with
/// additive noise so that their computational-basis totals give the noise
/// estimate, reconstructs by maximum likelihood, and bootstraps fidelity,
/// the smallest partial-transpose eigenvalue and the moment margin.
TomographyRoundTrip run_tomography_roundtrip(double p, double shots_per_setting, int replicas, uint64_t seed);

}  // namespace rmt

#endif
