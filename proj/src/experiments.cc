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

#include "rmt/experiments.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rmt/criteria.h"
#include "rmt/errors.h"
#include "rmt/invariants.h"
#include "rmt/parallel.h"
#include "rmt/states.h"

namespace rmt {

namespace {

void check_unit_interval(double x, const char *what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw InvalidArgument(std::string(what) + " must lie in [0, 1]");
    }
}

double std_of(const std::vector<double> &xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double sq = 0.0;
    for (double x : xs) sq += (x - mean) * (x - mean);
    return std::sqrt(sq / static_cast<double>(xs.size() - 1));
}

BootstrapSummary summarize(std::vector<double> values) {
    BootstrapSummary s;
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(values.size());
    s.std = std_of(values);
    s.values = std::move(values);
    return s;
}

}  // namespace

size_t Table::column(const std::string &name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw InvalidArgument("no column named " + name);
    }
    return static_cast<size_t>(it - columns.begin());
}

double Table::at(size_t row, const std::string &name) const { return rows.at(row).at(column(name)); }

std::vector<double> Table::column_values(const std::string &name) const {
    size_t c = column(name);
    std::vector<double> out;
    for (const auto &row : rows) out.push_back(row.at(c));
    return out;
}

std::vector<double> make_grid(double lo, double hi, double step) {
    check_unit_interval(lo, "grid start");
    check_unit_interval(hi, "grid end");
    if (!(step > 0.0)) {
        throw InvalidArgument("grid step must be positive");
    }
    if (lo > hi) {
        throw InvalidArgument("grid start exceeds grid end");
    }
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    std::vector<double> out;
    for (long k = 0; k <= n; ++k) {
        // Snap to 1e-12 so that 0.05 * 7 prints as 0.35.
        out.push_back(std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12);
    }
    return out;
}

void GhzwSweepConfig::validate() const {
    make_grid(g_min, g_max, g_step);
    if (repeats < 1) {
        throw InvalidArgument("repeats must be >= 1");
    }
    if (estimate) protocol.validate();
}

Table run_ghzw_sweep(const GhzwSweepConfig &cfg) {
    cfg.validate();
    const std::vector<double> grid = make_grid(cfg.g_min, cfg.g_max, cfg.g_step);
    Table t;
    t.columns = {"g", "A1", "A2", "A3", "criterion_I", "criterion_II", "concurrence_sq_sum", "g_C", "g_tau"};
    if (cfg.estimate) {
        for (const char *c : {"A1_est", "A1_err", "A2_est", "A2_err", "A3_est", "A3_err", "criterion_I_est",
                              "criterion_I_err", "criterion_II_est", "criterion_II_err"}) {
            t.columns.emplace_back(c);
        }
    }
    t.rows.resize(grid.size());
    parallel_for(grid.size(), [&](size_t k) {
        const double g = grid[k];
        DensityMatrix rho = ghzw_mix(g);
        SectorLengths a = sector_lengths_from_pauli(pauli_coeffs(rho));
        std::vector<double> &row = t.rows[k];
        row = {g,
               a.a1,
               a.a2,
               a.a3,
               criterion_strong_bisep(a, 0.0).value,
               criterion_a3(a.a3, 0.0).value - 3.0,
               squared_concurrence_sum(rho),
               kConcurrenceVanishingG,
               kThreeTangleVanishingG};
        if (cfg.estimate) {
            ProtocolConfig pc = cfg.protocol;
            pc.seed = derive_seed(cfg.protocol.seed, k);
            if (cfg.repeats == 1) {
                SectorLengthEstimate e = estimate_sector_lengths(rho, pc);
                row.insert(row.end(), {e.value.a1, e.std_error.a1, e.value.a2, e.std_error.a2, e.value.a3,
                                       e.std_error.a3, criterion_strong_bisep(e.value, 0.0).value,
                                       e.strong_bisep_std_error, e.value.a3 - 3.0, e.std_error.a3});
            } else {
                std::vector<std::vector<double>> reps(5);
                for (int r = 0; r < cfg.repeats; ++r) {
                    ProtocolConfig rc = pc;
                    rc.seed = derive_seed(pc.seed, static_cast<uint64_t>(r));
                    SectorLengths v = estimate_sector_lengths(rho, rc).value;
                    reps[0].push_back(v.a1);
                    reps[1].push_back(v.a2);
                    reps[2].push_back(v.a3);
                    reps[3].push_back(criterion_strong_bisep(v, 0.0).value);
                    reps[4].push_back(v.a3 - 3.0);
                }
                const double root = std::sqrt(static_cast<double>(cfg.repeats));
                std::vector<double> cells;
                for (const auto &xs : reps) {
                    BootstrapSummary s = summarize(xs);
                    cells.push_back(s.mean);
                    cells.push_back(s.std / root);
                }
                row.insert(row.end(), cells.begin(), cells.end());
            }
        }
    });
    return t;
}

std::vector<double> chessboard_reference_points() { return {0.0, 0.052, 0.0991, 0.1291, 0.1573, 0.2158}; }

void ChessboardSweepConfig::validate() const {
    grid();
    if (tomography) {
        if (!(shots_per_setting > 0.0)) {
            throw InvalidArgument("shots per setting must be positive");
        }
        if (bootstrap_replicas < 2) {
            throw InvalidArgument("bootstrap needs at least two replicas");
        }
    }
}

std::vector<double> ChessboardSweepConfig::grid() const {
    if (p_values.empty()) return make_grid(p_min, p_max, p_step);
    for (double p : p_values) check_unit_interval(p, "noise level");
    return p_values;
}

double chessboard_margin(double p) { return detect_bound_entanglement(noisy_chessboard(p)).margin; }

Table run_chessboard_sweep(const ChessboardSweepConfig &cfg) {
    cfg.validate();
    const std::vector<double> grid = cfg.grid();
    Table t;
    t.columns = {"p", "min_pt_eigenvalue", "r2", "r4", "bound", "margin", "detected", "de_vicente"};
    if (cfg.tomography) {
        for (const char *c : {"fidelity", "fidelity_err", "min_pt_est", "min_pt_err", "margin_est", "margin_err",
                              "p_est"}) {
            t.columns.emplace_back(c);
        }
    }
    t.rows.resize(grid.size());
    parallel_for(grid.size(), [&](size_t k) {
        const double p = grid[k];
        BoundEntanglementReport r = detect_bound_entanglement(noisy_chessboard(p));
        std::vector<double> &row = t.rows[k];
        row = {p, r.min_pt_eigenvalue, r.r2, r.r4, r.bound, r.margin, r.moment_violating ? 1.0 : 0.0, r.de_vicente};
        if (cfg.tomography) {
            TomographyRoundTrip rt = run_tomography_roundtrip(p, cfg.shots_per_setting, cfg.bootstrap_replicas,
                                                              derive_seed(cfg.seed, k));
            row.insert(row.end(), {rt.fidelity, rt.fidelity_bootstrap.std, rt.min_pt_bootstrap.mean,
                                   rt.min_pt_bootstrap.std, rt.margin_bootstrap.mean, rt.margin_bootstrap.std,
                                   rt.p_est});
        }
    });
    return t;
}

double chessboard_detection_threshold(double tol) {
    if (!(tol > 0.0)) {
        throw InvalidArgument("bisection tolerance must be positive");
    }
    double lo = 0.0, hi = 1.0;
    if (!(chessboard_margin(lo) < 0.0) || chessboard_margin(hi) < 0.0) {
        throw ConsistencyError("chessboard margin does not change sign on [0, 1]");
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (chessboard_margin(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

TomographyRoundTrip run_tomography_roundtrip(double p, double shots_per_setting, int replicas, uint64_t seed) {
    check_unit_interval(p, "noise level");
    if (replicas < 2) {
        throw InvalidArgument("bootstrap needs at least two replicas");
    }
    const DensityMatrix ideal = chessboard_state();
    const DensityMatrix target = noisy_chessboard(p);
    Rng rng = make_stream(seed, StreamDomain::kTomography, 0);
    std::vector<CountRecord> noisy = simulate_tomography_counts(ideal, shots_per_setting, p, rng, NoiseModel::kAdditive);
    std::vector<CountRecord> clean = simulate_tomography_counts(ideal, shots_per_setting, 0.0, rng, NoiseModel::kAdditive);

    TomographyRoundTrip out{p, noise_level_estimate(computational_basis_total(noisy), computational_basis_total(clean)),
                            0.0, {}, {}, {}, mle_reconstruct(noisy)};
    out.fidelity = fidelity(out.reconstruction.rho_hat, target);

    const auto resampled = poisson_resample(noisy, replicas, seed);
    std::vector<double> fid(resampled.size()), min_pt(resampled.size()), margin(resampled.size());
    parallel_for(resampled.size(), [&](size_t k) {
        DensityMatrix rho = mle_reconstruct(resampled[k]).rho_hat;
        BoundEntanglementReport r = detect_bound_entanglement(rho);
        fid[k] = fidelity(rho, target);
        min_pt[k] = r.min_pt_eigenvalue;
        margin[k] = r.margin;
    });
    out.fidelity_bootstrap = summarize(std::move(fid));
    out.min_pt_bootstrap = summarize(std::move(min_pt));
    out.margin_bootstrap = summarize(std::move(margin));
    return out;
}

}  // namespace rmt
