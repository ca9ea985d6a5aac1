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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "rmt/bloch.h"
#include "rmt/criteria.h"
#include "rmt/errors.h"
#include "rmt/experiments.h"
#include "rmt/invariants.h"
#include "rmt/protocol.h"
#include "rmt/states.h"
#include "rmt/tomography.h"

namespace {

using namespace rmt;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char *f, ...) {
    char buf[1024];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

SectorLengths polynomials(double g) {
    const double h = 1.0 - g;
    return {h * h / 3.0, 8 * g * g - 8 * g + 3, 4 * g * g + 11 * h * h / 3.0};
}

double bisect(const std::function<bool(double)> &left_side, double lo, double hi) {
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (left_side(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double criterion_one(double g) { return criterion_strong_bisep(sector_lengths_from_pauli(pauli_coeffs(ghzw_mix(g))), 0.0).value; }

Outcome ac1() {
    double worst = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const double g = k / 100.0;
        SectorLengths got = sector_lengths_from_pauli(pauli_coeffs(ghzw_mix(g)));
        SectorLengths want = polynomials(g);
        worst = std::max({worst, std::abs(got.a1 - want.a1), std::abs(got.a2 - want.a2), std::abs(got.a3 - want.a3)});
    }
    return {worst <= 1e-10, fmt("max deviation %.2e over 101 points (tol 1e-10)", worst)};
}

Outcome ac2() {
    // Criterion I is positive at g = 0 and g = 1 and negative at g = 0.45.
    const double r1 = bisect([](double g) { return criterion_one(g) > 0.0; }, 0.0, 0.45);
    const double r2 = bisect([](double g) { return criterion_one(g) < 0.0; }, 0.45, 1.0);
    const double rc = bisect([](double g) { return squared_concurrence_sum(ghzw_mix(g)) > 1e-12; }, 0.0, 1.0);
    const bool pass = std::abs(r1 - 0.297) <= 1e-3 && std::abs(r2 - 0.612) <= 1e-3 && std::abs(rc - 0.292) <= 2e-3;
    return {pass, fmt("criterion I roots %.4f, %.4f (0.297, 0.612 +- 1e-3); concurrence root %.4f (0.292 +- 2e-3)",
                      r1, r2, rc)};
}

Outcome ac3() {
    ProtocolConfig pc;
    pc.num_unitaries = 4000;
    pc.shots_per_unitary = 5300;
    pc.seed = 2024;
    struct Named {
        const char *name;
        DensityMatrix rho;
    };
    const Named states[] = {{"GHZ", DensityMatrix(ghz3())}, {"W", DensityMatrix(w3())}, {"g=0.5", ghzw_mix(0.5)}};
    bool pass = true;
    double worst_z = 0.0;
    for (size_t i = 0; i < 3; ++i) {
        ProtocolConfig c = pc;
        c.seed = derive_seed(pc.seed, i);
        SectorLengthEstimate e = estimate_sector_lengths(states[i].rho, c);
        SectorLengths x = sector_lengths_from_pauli(pauli_coeffs(states[i].rho));
        for (auto [est, err, exact] : {std::tuple{e.value.a1, e.std_error.a1, x.a1},
                                       std::tuple{e.value.a2, e.std_error.a2, x.a2},
                                       std::tuple{e.value.a3, e.std_error.a3, x.a3}}) {
            const double z = std::abs(est - exact) / err;
            worst_z = std::max(worst_z, z);
            pass = pass && z <= 3.0;
        }
    }
    GhzwSweepConfig sweep;
    sweep.protocol = pc;
    Table t = run_ghzw_sweep(sweep);
    int checked = 0, mismatched = 0;
    for (size_t k = 0; k < t.rows.size(); ++k) {
        const double g = t.at(k, "g");
        if (g > 0.20 + 1e-9 && g < 0.70 - 1e-9) continue;
        ++checked;
        if ((t.at(k, "criterion_I_est") > 0.0) != (t.at(k, "criterion_I") > 0.0)) ++mismatched;
    }
    pass = pass && mismatched == 0;
    return {pass, fmt("max |z| of A_k over GHZ, W, g=0.5 = %.2f (<= 3); criterion I sign mismatches %d of %d "
                      "grid points (M=4000, N=5300)",
                      worst_z, mismatched, checked)};
}

Outcome ac4() {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int cases = 0;
    for (int v = 0; v < 20; ++v) {
        const int n_out = 2 + v % 8;
        RVector p(n_out);
        std::vector<double> x(static_cast<size_t>(n_out));
        for (int i = 0; i < n_out; ++i) {
            p(i) = -std::log(u(gen));
            x[static_cast<size_t>(i)] = 2.0 * u(gen) - 1.0;
        }
        p /= p.sum();
        double mean = 0.0;
        for (int i = 0; i < n_out; ++i) mean += p(i) * x[static_cast<size_t>(i)];
        for (int64_t n : {2, 10, 100}) {
            Rng rng = make_stream(4, StreamDomain::kShots, static_cast<uint64_t>(cases++));
            const int reps = 100000;
            double s = 0.0, sq = 0.0;
            for (int r = 0; r < reps; ++r) {
                const double e = estimate_E2(sample_counts(p, n, rng), x);
                s += e;
                sq += e * e;
            }
            const double m = s / reps;
            const double sem = std::sqrt((sq / reps - m * m) / (reps - 1));
            worst = std::max(worst, std::abs(m - mean * mean) / sem);
        }
    }
    return {worst <= 4.0, fmt("max |z| over %d cases = %.2f (<= 4)", cases, worst)};
}

Outcome ac5() {
    double min_pt = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 1000; ++k) {
        const double p = k / 1000.0;
        min_pt = std::min(min_pt, min_eigenvalue(partial_transpose(noisy_chessboard(p), 1)));
    }
    BoundEntanglementReport r0 = detect_bound_entanglement(noisy_chessboard(0.0));
    BoundEntanglementReport r1 = detect_bound_entanglement(noisy_chessboard(0.1291));
    const double b = min_r4_given_r2(0.2355, 3).bound;
    const bool pass = min_pt >= -1e-10 && r0.moment_violating && r1.moment_violating && std::abs(b - 0.0277) <= 5e-4;
    return {pass, fmt("min PT eigenvalue over p in [0,1] = %.3e; margin p=0 %.5f, p=0.1291 %.5f; "
                      "bound(0.2355) = %.6f (0.0277 +- 5e-4)",
                      min_pt, r0.margin, r1.margin, b)};
}

int run_cli(const std::string &args) {
    const std::string cmd = std::string(RMT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome ac6() {
    HaarOracleResult o = haar_moment_oracle(chessboard_state(), 100000, 6);
    bool consistent = true;
    try {
        require_consistent(o, 3.0);
    } catch (const ConsistencyError &) {
        consistent = false;
    }
    // A deliberately impossible tolerance must abort the CLI with exit code 3.
    const int code = run_cli("--out /tmp/rmt_acceptance --format json estimate-moments --state chessboard "
                             "--oracle-samples 1000 --oracle-sigmas 1e-9");
    return {consistent && code == 3,
            fmt("z(r2) = %+.2f, z(r4) = %+.2f with 1e5 samples (|z| <= 3); forced inconsistency exit code %d (3)",
                o.z2, o.z4, code)};
}

double two_value_grid_search(double r2) {
    const double s2 = 4.0 * r2;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 8; ++k) {
        for (int m = 0; m + k <= 8; ++m) {
            // With m = 0 the constraint fixes a, so there is nothing to scan.
            const double a_max = std::sqrt(s2 / k);
            for (double a = m == 0 ? a_max : 0.0; a <= a_max; a += 1e-3) {
                const double b = m > 0 ? std::sqrt(std::max(s2 - k * a * a, 0.0) / m) : 0.0;
                if (k * a + m * b > 2.0 + 1e-12) continue;
                const double x = k * a * a + m * b * b, y = k * std::pow(a, 4) + m * std::pow(b, 4);
                best = std::min(best, (x * x / 3.0 + 2.0 * y / 3.0) / 16.0);
            }
        }
    }
    return best;
}

Outcome ac7() {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_gap = 0.0, worst_excess = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100; ++k) {
        const double r2 = u(gen);
        const double e = min_r4_given_r2(r2, 3).bound;
        const double g = min_r4_given_r2_projected_gradient(r2, 3).bound;
        const double grid = two_value_grid_search(r2);
        worst_gap = std::max(worst_gap, std::abs(e - g));
        worst_excess = std::max({worst_excess, e - grid, g - grid});
    }
    return {worst_gap <= 1e-6 && worst_excess <= 1e-12,
            fmt("max |enumeration - gradient| = %.2e (<= 1e-6); max excess over grid search = %.2e (<= 0)",
                worst_gap, worst_excess)};
}

Outcome ac8() {
    TomographyRoundTrip rt = run_tomography_roundtrip(0.1291, 1e5, 100, 8);
    const bool fid_ok = rt.fidelity >= 0.999;
    const bool p_ok = std::abs(rt.p_est - 0.1291) <= 0.01;
    const double s = rt.fidelity_bootstrap.std;
    const bool std_ok = s >= 1e-4 && s <= 1e-2;
    return {fid_ok && p_ok && std_ok,
            fmt("fidelity %.5f (>= 0.999: %s); p_est %.4f (0.1291 +- 0.01: %s); bootstrap fidelity std %.2e "
                "(order 1e-3: %s)",
                rt.fidelity, fid_ok ? "yes" : "no", rt.p_est, p_ok ? "yes" : "no", s, std_ok ? "yes" : "no")};
}

Outcome ac9() {
    Table t = run_chessboard_sweep(ChessboardSweepConfig{chessboard_reference_points()});
    double lowest = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < t.rows.size(); ++k) lowest = std::min(lowest, t.at(k, "min_pt_eigenvalue"));
    return {true, fmt("informational: measured fidelities 0.9835-0.9930 and PT eigenvalue -0.0133 are hardware "
                      "scales, not targets; simulated ideal min PT eigenvalue over the six noise levels = %.4f",
                      lowest)};
}

}  // namespace

int main() {
    struct Criterion {
        const char *id;
        Outcome (*run)();
        double max_seconds;
    };
    const Criterion criteria[] = {
        {"AC1", ac1, 1.0},   {"AC2", ac2, 1.0}, {"AC3", ac3, 300.0}, {"AC4", ac4, 600.0}, {"AC5", ac5, 10.0},
        {"AC6", ac6, 600.0}, {"AC7", ac7, 600.0}, {"AC8", ac8, 120.0}, {"AC9", ac9, 600.0},
    };
    int failures = 0;
    for (const Criterion &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.max_seconds;
        const bool pass = o.pass && in_time;
        failures += !pass;
        std::printf("%s %s  %s [%.2f s%s]\n", c.id, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                    in_time ? "" : fmt(", limit %.0f s", c.max_seconds).c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
