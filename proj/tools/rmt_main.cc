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

// rmt: command-line front end for the randomized-measurement toolbox.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical consistency
// failure, 1 anything else.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmt/criteria.h"
#include "rmt/errors.h"
#include "rmt/experiments.h"
#include "rmt/invariants.h"
#include "rmt/output.h"
#include "rmt/protocol.h"
#include "rmt/states.h"
#include "rmt/tomography.h"

namespace {

using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitConsistency = 3;

struct Common {
    uint64_t seed = 0;
    int unitaries = 4000;
    int shots = 5300;
    std::string out = "out";
    std::vector<std::string> formats{"csv", "svg", "json"};
    double sigmas = 3.0;
};

json common_json(const Common &c) {
    return {{"seed", c.seed}, {"unitaries", c.unitaries}, {"shots", c.shots}, {"out", c.out},
            {"format", c.formats}, {"sigmas", c.sigmas}};
}

rmt::ProtocolConfig protocol_config(const Common &c) {
    rmt::ProtocolConfig pc;
    pc.num_unitaries = c.unitaries;
    pc.shots_per_unitary = c.shots;
    pc.seed = c.seed;
    return pc;
}

void emit(const rmt::Table &t, const Common &c, const std::string &stem, const rmt::PlotSpec &plot,
          const json &config, const json &extra = json::object()) {
    json summary = rmt::json_summary(stem, config, c.seed, t, extra);
    for (const auto &path : rmt::emit_outputs(t, c.out, stem, c.formats, plot, summary)) {
        std::cout << "wrote " << path.string() << '\n';
    }
}

std::string verdict(const rmt::CriterionResult &r, double sigmas) {
    if (!r.violated) return "not violated";
    return r.significant(sigmas) ? "violated" : "violated (below significance)";
}

// ghzw-sweep -----------------------------------------------------------------

struct GhzwArgs {
    rmt::GhzwSweepConfig cfg;
    bool exact_only = false;
};

void run_ghzw(const GhzwArgs &a, const Common &c) {
    rmt::GhzwSweepConfig cfg = a.cfg;
    cfg.estimate = !a.exact_only;
    cfg.protocol = protocol_config(c);
    rmt::Table t = rmt::run_ghzw_sweep(cfg);

    rmt::PlotSpec plot{"GHZ-W mixtures: sector-length criteria", "g", "g", "criterion value", {}, {0.0},
                       {rmt::kConcurrenceVanishingG, rmt::kThreeTangleVanishingG}};
    plot.series.push_back({"criterion_I", "A2+A3-3(1+A1)", ""});
    plot.series.push_back({"criterion_II", "A3-3", ""});
    plot.series.push_back({"concurrence_sq_sum", "C2(A|B)+C2(A|C)", ""});
    if (cfg.estimate) {
        plot.series.push_back({"criterion_I_est", "A2+A3-3(1+A1), estimated", "criterion_I_err"});
        plot.series.push_back({"criterion_II_est", "A3-3, estimated", "criterion_II_err"});
    }
    json config = common_json(c);
    config.update({{"g_min", cfg.g_min}, {"g_max", cfg.g_max}, {"g_step", cfg.g_step}, {"estimate", cfg.estimate},
                   {"repeats", cfg.repeats}});
    emit(t, c, "ghzw_sweep", plot, config, {{"criterion_I_verdict", rmt::kStrongBisepVerdict}});

    for (size_t r = 0; r < t.rows.size(); ++r) {
        std::printf("g=%.3f  A=(%.4f, %.4f, %.4f)  I=%+.4f  II=%+.4f", t.at(r, "g"), t.at(r, "A1"), t.at(r, "A2"),
                    t.at(r, "A3"), t.at(r, "criterion_I"), t.at(r, "criterion_II"));
        if (cfg.estimate) {
            rmt::CriterionResult c1{"I", t.at(r, "criterion_I_est"), 0.0, rmt::Direction::kGreater,
                                    t.at(r, "criterion_I_est") > 0.0, t.at(r, "criterion_I_err")};
            std::printf("  est I=%+.4f+-%.4f (%s)", c1.value, c1.std_error, verdict(c1, c.sigmas).c_str());
        }
        std::printf("\n");
    }
}

// chessboard-sweep -----------------------------------------------------------

struct ChessArgs {
    rmt::ChessboardSweepConfig cfg;
    bool reference_points = false;
};

void run_chess(const ChessArgs &a, const Common &c) {
    rmt::ChessboardSweepConfig cfg = a.cfg;
    cfg.seed = c.seed;
    if (a.reference_points) cfg.p_values = rmt::chessboard_reference_points();
    rmt::Table t = rmt::run_chessboard_sweep(cfg);
    const double threshold = rmt::chessboard_detection_threshold(1e-3);

    rmt::PlotSpec plot{"Noisy chessboard: PT spectrum and fourth-moment margin", "p", "noise level p", "value",
                       {}, {0.0}, {threshold}};
    plot.series.push_back({"min_pt_eigenvalue", "min PT eigenvalue", ""});
    plot.series.push_back({"margin", "r4 - bound", ""});
    if (cfg.tomography) {
        plot.series.push_back({"min_pt_est", "min PT eigenvalue, tomography", "min_pt_err"});
        plot.series.push_back({"margin_est", "r4 - bound, tomography", "margin_err"});
    }
    json config = common_json(c);
    config.update({{"p_values", cfg.grid()}, {"tomography", cfg.tomography},
                   {"shots_per_setting", cfg.shots_per_setting}, {"bootstrap_replicas", cfg.bootstrap_replicas}});
    emit(t, c, "chessboard_sweep", plot, config, {{"detection_threshold_p", threshold}});

    for (size_t r = 0; r < t.rows.size(); ++r) {
        std::printf("p=%.4f  minPT=%+.5f  r2=%.5f  r4=%.6f  bound=%.6f  margin=%+.6f  %s\n", t.at(r, "p"),
                    t.at(r, "min_pt_eigenvalue"), t.at(r, "r2"), t.at(r, "r4"), t.at(r, "bound"), t.at(r, "margin"),
                    t.at(r, "detected") > 0.5 ? "detected" : "-");
    }
    std::printf("detection threshold p* = %.4f\n", threshold);
}

// estimate-moments -----------------------------------------------------------

struct MomentArgs {
    std::string state = "chessboard";
    double p = 0.1291;
    double g = 0.5;
    int oracle_samples = 100000;
    double oracle_sigmas = 3.0;
    bool skip_oracle = false;
};

void run_moments(const MomentArgs &a, const Common &c) {
    rmt::ProtocolConfig pc = protocol_config(c);
    json config = common_json(c);
    config.update({{"state", a.state}});
    rmt::Table t;
    if (a.state == "chessboard") {
        config.update({{"p", a.p}, {"oracle_samples", a.oracle_samples}, {"oracle_sigmas", a.oracle_sigmas}});
        rmt::DensityMatrix rho = rmt::noisy_chessboard(a.p);
        rmt::MomentPair exact = rmt::moments_from_T(rmt::bloch_decompose(rho).T, 3);
        if (!a.skip_oracle) {
            rmt::HaarOracleResult o = rmt::haar_moment_oracle(rho, a.oracle_samples, c.seed);
            std::printf("oracle r2 %.6f +- %.6f vs %.6f (z=%+.2f)\n", o.r2.value, o.r2.std_error, o.formula.r2, o.z2);
            std::printf("oracle r4 %.6f +- %.6f vs %.6f (z=%+.2f)\n", o.r4.value, o.r4.std_error, o.formula.r4, o.z4);
            rmt::require_consistent(o, a.oracle_sigmas);
        }
        rmt::MomentPairEstimate e = rmt::estimate_bipartite_moments(rho, pc);
        const double bound = rmt::min_r4_given_r2(std::min(std::max(e.r2.value, 0.0), 1.0), 3).bound;
        rmt::CriterionResult crit{"r4 below bound", e.r4.value, bound, rmt::Direction::kLess, e.r4.value < bound,
                                  e.r4.std_error};
        t.columns = {"p", "r2_exact", "r4_exact", "r2_est", "r2_err", "r4_est", "r4_err", "bound", "z"};
        t.rows.push_back({a.p, exact.r2, exact.r4, e.r2.value, e.r2.std_error, e.r4.value, e.r4.std_error, bound,
                          crit.z_score()});
        std::printf("r2 = %.5f +- %.5f (exact %.5f)\nr4 = %.6f +- %.6f (exact %.6f)\nbound = %.6f  z = %+.2f  %s\n",
                    e.r2.value, e.r2.std_error, exact.r2, e.r4.value, e.r4.std_error, exact.r4, bound,
                    crit.z_score(), verdict(crit, c.sigmas).c_str());
    } else {
        rmt::DensityMatrix rho = a.state == "ghz"   ? rmt::DensityMatrix(rmt::ghz3())
                                 : a.state == "w"   ? rmt::DensityMatrix(rmt::w3())
                                 : a.state == "ghzw" ? rmt::ghzw_mix(a.g)
                                                     : throw rmt::InvalidArgument("unknown state " + a.state);
        if (a.state == "ghzw") config.update({{"g", a.g}});
        rmt::SectorLengths exact = rmt::sector_lengths_from_pauli(rmt::pauli_coeffs(rho));
        rmt::SectorLengthEstimate e = rmt::estimate_sector_lengths(rho, pc);
        rmt::CriterionResult c1 = rmt::criterion_strong_bisep(e.value, e.strong_bisep_std_error);
        rmt::CriterionResult c2 = rmt::criterion_a3(e.value.a3, e.std_error.a3);
        t.columns = {"A1_exact", "A2_exact", "A3_exact", "A1_est", "A1_err", "A2_est", "A2_err", "A3_est", "A3_err",
                     "criterion_I_est", "criterion_I_err"};
        t.rows.push_back({exact.a1, exact.a2, exact.a3, e.value.a1, e.std_error.a1, e.value.a2, e.std_error.a2,
                          e.value.a3, e.std_error.a3, c1.value, c1.std_error});
        std::printf("A1 = %.4f +- %.4f (exact %.4f)\nA2 = %.4f +- %.4f (exact %.4f)\nA3 = %.4f +- %.4f (exact %.4f)\n",
                    e.value.a1, e.std_error.a1, exact.a1, e.value.a2, e.std_error.a2, exact.a2, e.value.a3,
                    e.std_error.a3, exact.a3);
        std::printf("A2+A3-3(1+A1) = %+.4f +- %.4f: %s [%s]\n", c1.value, c1.std_error,
                    verdict(c1, c.sigmas).c_str(), rmt::kStrongBisepVerdict);
        std::printf("A3 - 3 = %+.4f +- %.4f: %s\n", c2.value - 3.0, c2.std_error, verdict(c2, c.sigmas).c_str());
    }
    std::vector<std::string> formats;
    for (const std::string &f : c.formats) {
        if (f != "svg") formats.push_back(f);
    }
    Common no_plot = c;
    no_plot.formats = formats;
    emit(t, no_plot, "moments", {}, config);
}

// tomography-roundtrip -------------------------------------------------------

struct TomoArgs {
    double p = 0.1291;
    double shots = 1e5;
    int replicas = 100;
};

void run_tomo(const TomoArgs &a, const Common &c) {
    rmt::TomographyRoundTrip rt = rmt::run_tomography_roundtrip(a.p, a.shots, a.replicas, c.seed);
    rmt::Table t;
    t.columns = {"p", "p_est", "fidelity", "fidelity_boot_mean", "fidelity_boot_std", "min_pt_mean", "min_pt_std",
                 "margin_mean", "margin_std", "mle_iterations", "mle_converged"};
    t.rows.push_back({a.p, rt.p_est, rt.fidelity, rt.fidelity_bootstrap.mean, rt.fidelity_bootstrap.std,
                      rt.min_pt_bootstrap.mean, rt.min_pt_bootstrap.std, rt.margin_bootstrap.mean,
                      rt.margin_bootstrap.std, static_cast<double>(rt.reconstruction.iterations),
                      rt.reconstruction.converged ? 1.0 : 0.0});
    std::printf("p = %.4f, estimated %.4f\nfidelity = %.5f (bootstrap %.5f +- %.5f)\n"
                "min PT eigenvalue = %+.5f +- %.5f\nr4 - bound = %+.6f +- %.6f\n",
                a.p, rt.p_est, rt.fidelity, rt.fidelity_bootstrap.mean, rt.fidelity_bootstrap.std,
                rt.min_pt_bootstrap.mean, rt.min_pt_bootstrap.std, rt.margin_bootstrap.mean,
                rt.margin_bootstrap.std);
    json config = common_json(c);
    config.update({{"p", a.p}, {"shots_per_setting", a.shots}, {"replicas", a.replicas}});
    std::vector<std::string> formats;
    for (const std::string &f : c.formats) {
        if (f != "svg") formats.push_back(f);
    }
    Common no_plot = c;
    no_plot.formats = formats;
    emit(t, no_plot, "tomography_roundtrip", {}, config);
}

// bound ----------------------------------------------------------------------

struct BoundArgs {
    double r2 = 0.2355;
    int d = 3;
};

void run_bound(const BoundArgs &a, const Common &c) {
    rmt::FourthMomentBound e = rmt::min_r4_given_r2(a.r2, a.d);
    rmt::FourthMomentBound g = rmt::min_r4_given_r2_projected_gradient(a.r2, a.d);
    std::printf("min r4 given r2 = %.6f (d = %d): %.8f (enumeration), %.8f (projected gradient)\n", a.r2, a.d,
                e.bound, g.bound);
    std::printf("optimal singular values:");
    for (Eigen::Index i = 0; i < e.optimal_singular_values.size(); ++i) {
        std::printf(" %.6f", e.optimal_singular_values(i));
    }
    std::printf("\n");
    if (std::abs(e.bound - g.bound) > 1e-6) {
        throw rmt::ConsistencyError("bound solvers disagree");
    }
    rmt::Table t;
    t.columns = {"r2", "d", "bound", "bound_gradient"};
    t.rows.push_back({a.r2, static_cast<double>(a.d), e.bound, g.bound});
    json config = common_json(c);
    config.update({{"r2", a.r2}, {"d", a.d}});
    std::vector<std::string> formats;
    for (const std::string &f : c.formats) {
        if (f != "svg") formats.push_back(f);
    }
    Common no_plot = c;
    no_plot.formats = formats;
    emit(t, no_plot, "bound", {}, config);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Randomized-measurement entanglement toolbox"};
    app.set_version_flag("--version", std::string(rmt::kVersion));
    app.set_config("--config", "", "INI/TOML file; command-line flags override it");
    app.require_subcommand(1);

    Common common;
    app.add_option("--seed", common.seed, "Master seed")->capture_default_str();
    app.add_option("--unitaries", common.unitaries, "Random unitaries per estimate (M)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--shots", common.shots, "Shots per unitary (N)")->check(CLI::Range(2, 1 << 30))->capture_default_str();
    app.add_option("--out", common.out, "Output directory")->capture_default_str();
    app.add_option("--format", common.formats, "Output formats")
        ->check(CLI::IsMember({"csv", "svg", "json"}))
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--sigmas", common.sigmas, "Significance for reported violations")->capture_default_str();

    GhzwArgs ghzw;
    auto *g = app.add_subcommand("ghzw-sweep", "Sector-length criteria across GHZ-W mixtures");
    g->add_option("--g-min", ghzw.cfg.g_min)->capture_default_str();
    g->add_option("--g-max", ghzw.cfg.g_max)->capture_default_str();
    g->add_option("--g-step", ghzw.cfg.g_step)->capture_default_str();
    g->add_option("--repeats", ghzw.cfg.repeats, "Independent repetitions per grid point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    g->add_flag("--exact-only", ghzw.exact_only, "Skip the randomized-measurement estimate");

    ChessArgs chess;
    auto *ch = app.add_subcommand("chessboard-sweep", "PPT and moment criterion across noisy chessboard states");
    ch->add_option("--p-min", chess.cfg.p_min)->capture_default_str();
    ch->add_option("--p-max", chess.cfg.p_max)->capture_default_str();
    ch->add_option("--p-step", chess.cfg.p_step)->capture_default_str();
    ch->add_option("--p-values", chess.cfg.p_values, "Explicit noise levels")->delimiter(',');
    ch->add_flag("--reference-points", chess.reference_points, "Use the six experimental noise levels");
    ch->add_flag("--tomography", chess.cfg.tomography, "Add a simulated tomography round trip per point");
    ch->add_option("--tomo-shots", chess.cfg.shots_per_setting)->capture_default_str();
    ch->add_option("--replicas", chess.cfg.bootstrap_replicas)->capture_default_str();

    MomentArgs moments;
    auto *m = app.add_subcommand("estimate-moments", "Finite-shot moments with an exact Haar cross-check");
    m->add_option("--state", moments.state)
        ->check(CLI::IsMember({"chessboard", "ghz", "w", "ghzw"}))
        ->capture_default_str();
    m->add_option("--p", moments.p, "Chessboard noise level")->capture_default_str();
    m->add_option("--g", moments.g, "GHZ weight for --state ghzw")->capture_default_str();
    m->add_option("--oracle-samples", moments.oracle_samples)->check(CLI::Range(2, 1 << 30))->capture_default_str();
    m->add_option("--oracle-sigmas", moments.oracle_sigmas)->capture_default_str();
    m->add_flag("--skip-oracle", moments.skip_oracle);

    TomoArgs tomo;
    auto *tr = app.add_subcommand("tomography-roundtrip", "Simulated chessboard tomography with bootstrap");
    tr->add_option("--p", tomo.p)->capture_default_str();
    tr->add_option("--tomo-shots", tomo.shots, "Shots per setting")->capture_default_str();
    tr->add_option("--replicas", tomo.replicas)->capture_default_str();

    BoundArgs bound;
    auto *b = app.add_subcommand("bound", "Separable lower bound on r4 for a given r2");
    b->add_option("--r2", bound.r2)->capture_default_str();
    b->add_option("--d", bound.d)->check(CLI::Range(2, 16))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (g->parsed()) run_ghzw(ghzw, common);
        if (ch->parsed()) run_chess(chess, common);
        if (m->parsed()) run_moments(moments, common);
        if (tr->parsed()) run_tomo(tomo, common);
        if (b->parsed()) run_bound(bound, common);
    } catch (const rmt::InvalidArgument &e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const rmt::ConsistencyError &e) {
        std::cerr << "consistency failure: " << e.what() << '\n';
        return kExitConsistency;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
