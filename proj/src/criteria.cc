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

#include "rmt/criteria.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rmt/errors.h"
#include "rmt/invariants.h"
#include "rmt/rng.h"

namespace rmt {

namespace {

constexpr double kFeasibilityTol = 1e-12;
// Margin below which r4 is considered equal to the bound.
constexpr double kTieTol = 1e-12;

struct BoundProblem {
    int n = 0;           // number of singular values, d^2 - 1
    double cap = 0.0;    // d - 1
    double sum_sq = 0.0; // r2 (d-1)^2
};

BoundProblem make_problem(double r2, int d) {
    if (d < 2) {
        throw InvalidArgument("dimension must be >= 2");
    }
    if (!(r2 >= 0.0) || r2 > 1.0 + kFeasibilityTol) {
        throw InvalidArgument("r2 = " + std::to_string(r2) + " is infeasible: need 0 <= r2 <= 1");
    }
    BoundProblem p;
    p.n = d * d - 1;
    p.cap = d - 1.0;
    p.sum_sq = std::min(r2, 1.0) * p.cap * p.cap;
    return p;
}

FourthMomentBound finish(double r2, int d, std::vector<double> sigma) {
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    RVector s = Eigen::Map<RVector>(sigma.data(), static_cast<Index>(sigma.size()));
    return {r2, moments_from_singular_values(s, d).r4, s};
}

std::vector<double> pattern(int n, int k, double a, int m, double b) {
    std::vector<double> s(static_cast<size_t>(n), 0.0);
    std::fill_n(s.begin(), k, a);
    std::fill_n(s.begin() + k, m, b);
    return s;
}

// Euclidean projection onto {s >= 0, sum s <= cap}.
void project_capped(std::vector<double> &s, double cap) {
    double total = 0.0;
    for (double &x : s) {
        x = std::max(x, 0.0);
        total += x;
    }
    if (total <= cap) return;
    std::vector<double> sorted = s;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0, shift = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i) {
        cumulative += sorted[i];
        double t = (cumulative - cap) / static_cast<double>(i + 1);
        if (i + 1 == sorted.size() || sorted[i + 1] <= t) {
            shift = t;
            break;
        }
    }
    for (double &x : s) x = std::max(x - shift, 0.0);
}

}  // namespace

double CriterionResult::z_score() const {
    double diff = value - threshold;
    if (std_error > 0.0) return diff / std_error;
    if (diff == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), diff);
}

bool CriterionResult::significant(double sigmas) const {
    if (!violated) return false;
    double z = z_score();
    return direction == Direction::kGreater ? z >= sigmas : -z >= sigmas;
}

CriterionResult criterion_a3(double a3, double std_error) {
    return {"A3 > 3 (GME)", a3, 3.0, Direction::kGreater, a3 > 3.0, std_error};
}

CriterionResult criterion_strong_bisep(const SectorLengths &a, double std_error) {
    double value = a.a2 + a.a3 - 3.0 * (1.0 + a.a1);
    return {std::string("A2 + A3 > 3(1 + A1): ") + kStrongBisepVerdict, value, 0.0, Direction::kGreater, value > 0.0,
            std_error};
}

double de_vicente_value(const RMatrix &T, int d) {
    const Index n = static_cast<Index>(d) * d - 1;
    if (T.rows() != n || T.cols() != n) {
        throw InvalidArgument("correlation matrix has the wrong size for d = " + std::to_string(d));
    }
    return trace_norm(T);
}

FourthMomentBound min_r4_given_r2(double r2, int d) {
    const BoundProblem p = make_problem(r2, d);
    if (p.sum_sq == 0.0) {
        return finish(r2, d, std::vector<double>(static_cast<size_t>(p.n), 0.0));
    }
    const double c = p.cap, s = p.sum_sq;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_sigma;
    auto consider = [&](int k, double a, int m, double b) {
        if (a < 0.0 || b < 0.0) return;
        if (k * a + m * b > c * (1.0 + kFeasibilityTol)) return;
        double quartic = k * std::pow(a, 4) + m * std::pow(b, 4);
        if (quartic < best) {
            best = quartic;
            best_sigma = pattern(p.n, k, a, m, b);
        }
    };
    for (int k = 1; k <= p.n; ++k) {
        // Sum constraint inactive: one common value.
        consider(k, std::sqrt(s / k), 0, 0.0);
        // Sum constraint active: k a^2 + m b^2 = s and k a + m b = c, which
        // reduces to k(k+m) a^2 - 2ck a + (c^2 - m s) = 0.
        for (int m = 1; k + m <= p.n; ++m) {
            double disc = static_cast<double>(k) * m * ((k + m) * s - c * c);
            if (disc < 0.0) continue;
            for (double sign : {1.0, -1.0}) {
                double a = (c * k + sign * std::sqrt(disc)) / (static_cast<double>(k) * (k + m));
                double b = (c - k * a) / m;
                consider(k, a, m, b);
            }
        }
    }
    if (best_sigma.empty()) {
        throw ConsistencyError("no feasible stationary point found for r2 = " + std::to_string(r2));
    }
    return finish(r2, d, best_sigma);
}

FourthMomentBound min_r4_given_r2_projected_gradient(double r2, int d) {
    const BoundProblem p = make_problem(r2, d);
    const auto n = static_cast<size_t>(p.n);
    if (p.sum_sq == 0.0) {
        return finish(r2, d, std::vector<double>(n, 0.0));
    }
    const double c = p.cap, s = p.sum_sq;

    auto constraint = [&](const std::vector<double> &x) {
        double q = 0.0;
        for (double v : x) q += v * v;
        return q - s;
    };
    auto quartic = [](const std::vector<double> &x) {
        double q = 0.0;
        for (double v : x) q += v * v * v * v;
        return q;
    };

    constexpr int kStarts = 24;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_sigma;
    for (int start = 0; start < kStarts; ++start) {
        Rng rng = make_stream(0, StreamDomain::kSolver, static_cast<uint64_t>(start));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<double> x(n);
        for (double &v : x) v = unif(rng);
        project_capped(x, c);

        double lambda = 0.0, mu = 10.0;
        double prev_violation = std::abs(constraint(x));
        for (int outer = 0; outer < 60; ++outer) {
            auto lagrangian = [&](const std::vector<double> &y) {
                double h = constraint(y);
                return quartic(y) + lambda * h + 0.5 * mu * h * h;
            };
            double step = 1.0;
            for (int inner = 0; inner < 4000; ++inner) {
                double h = constraint(x);
                std::vector<double> grad(n);
                for (size_t i = 0; i < n; ++i) {
                    grad[i] = 4.0 * x[i] * x[i] * x[i] + 2.0 * (lambda + mu * h) * x[i];
                }
                double fx = lagrangian(x);
                std::vector<double> trial(n);
                double decrease = 0.0;
                bool accepted = false;
                for (int ls = 0; ls < 60; ++ls) {
                    for (size_t i = 0; i < n; ++i) trial[i] = x[i] - step * grad[i];
                    project_capped(trial, c);
                    double lin = 0.0, dist = 0.0;
                    for (size_t i = 0; i < n; ++i) {
                        lin += grad[i] * (trial[i] - x[i]);
                        dist += (trial[i] - x[i]) * (trial[i] - x[i]);
                    }
                    double ft = lagrangian(trial);
                    if (ft <= fx + lin + dist / (2.0 * step)) {
                        decrease = fx - ft;
                        accepted = true;
                        break;
                    }
                    step *= 0.5;
                }
                if (!accepted) break;
                double moved = 0.0;
                for (size_t i = 0; i < n; ++i) moved = std::max(moved, std::abs(trial[i] - x[i]));
                x = trial;
                step *= 2.0;
                if (moved < 1e-15 || decrease < 1e-18) break;
            }
            double h = constraint(x);
            lambda += mu * h;
            if (std::abs(h) > 0.25 * prev_violation) mu = std::min(mu * 4.0, 1e10);
            prev_violation = std::abs(h);
            if (std::abs(h) < 1e-14) break;
        }
        // Exact feasibility for the equality: rescale onto the sphere when the
        // cap still holds.
        double norm_sq = constraint(x) + s;
        if (norm_sq > 0.0) {
            double scale = std::sqrt(s / norm_sq);
            double total = 0.0;
            for (double &v : x) {
                v *= scale;
                total += v;
            }
            if (total > c * (1.0 + 1e-9)) continue;
        }
        double value = quartic(x);
        if (value < best) {
            best = value;
            best_sigma = x;
        }
    }
    if (best_sigma.empty()) {
        throw ConsistencyError("projected gradient found no feasible point for r2 = " + std::to_string(r2));
    }
    return finish(r2, d, best_sigma);
}

BoundEntanglementReport detect_bound_entanglement(const DensityMatrix &rho, double ppt_tol) {
    const auto &dims = rho.shape().dims();
    if (dims.size() != 2 || dims[0] != dims[1]) {
        throw InvalidArgument("bound entanglement detection needs two parties of equal dimension");
    }
    const int d = dims[0];
    BlochDecomposition b = bloch_decompose(rho);
    MomentPair moments = moments_from_T(b.T, d);
    BoundEntanglementReport r;
    r.r2 = moments.r2;
    r.r4 = moments.r4;
    // r2 > 1 already rules out tr|T| <= d-1, so no separable state matches.
    r.bound = moments.r2 > 1.0 ? std::numeric_limits<double>::infinity() : min_r4_given_r2(moments.r2, d).bound;
    r.margin = r.r4 - r.bound;
    r.min_pt_eigenvalue = min_eigenvalue(partial_transpose(rho, 1));
    r.de_vicente = de_vicente_value(b.T, d);
    r.ppt = r.min_pt_eigenvalue >= -ppt_tol;
    r.moment_violating = r.margin < -kTieTol;
    r.bound_entangled_evidence = r.ppt && r.moment_violating;
    return r;
}

}  // namespace rmt
