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

// Entanglement verdicts built on sector lengths and on the second and fourth
// randomized-measurement moments.

#ifndef RMT_CRITERIA_H
#define RMT_CRITERIA_H

#include <string>

#include "rmt/bloch.h"
#include "rmt/linalg.h"

namespace rmt {

/// Which side of the threshold signals entanglement.
enum class Direction { kGreater, kLess };

struct CriterionResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    Direction direction = Direction::kGreater;
    /// Strict inequality: a value exactly at the threshold is not a violation.
    bool violated = false;
    double std_error = 0.0;

    /// (value - threshold) / std_error; infinite when std_error is zero and
    /// the value differs from the threshold.
    double z_score() const;
    /// Violated by at least `sigmas` standard errors.
    bool significant(double sigmas) const;
};

inline constexpr const char *kStrongBisepVerdict = "no fixed-partition biseparability (GME conjectured)";

/// A3 > 3 implies genuine multipartite entanglement of three qubits.
CriterionResult criterion_a3(double a3, double std_error);

/// Value A2 + A3 - 3(1 + A1), threshold 0. A positive value excludes
/// biseparability with respect to every fixed bipartition.
CriterionResult criterion_strong_bisep(const SectorLengths &a, double std_error);

/// Trace norm of the correlation matrix; separable states satisfy <= d-1.
double de_vicente_value(const RMatrix &T, int d);

struct FourthMomentBound {
    double r2_input = 0.0;
    double bound = 0.0;
    /// Minimizing singular values of T, descending, length d^2-1.
    RVector optimal_singular_values;
};

/// Smallest r4 compatible with the measured r2 and tr|T| <= d-1, so any
/// state with r4 below the bound is entangled.
///
/// With the singular values s of T: sum s^2 = r2 (d-1)^2 is fixed, so the
/// task is to minimize sum s^4 subject to sum s <= d-1 and s >= 0. Stationary
/// points take at most two distinct nonzero values, so every split into k
/// entries at a and m entries at b is solved in closed form and the best is
/// kept. Throws InvalidArgument if r2 < 0 or r2 > 1 (no such T exists).
FourthMomentBound min_r4_given_r2(double r2, int d);

/// Same problem solved numerically: projected gradient on
/// {s >= 0, sum s <= d-1} with an augmented Lagrangian for the equality,
/// restarted from several random points.
FourthMomentBound min_r4_given_r2_projected_gradient(double r2, int d);

struct BoundEntanglementReport {
    double r2 = 0.0;
    double r4 = 0.0;
    double bound = 0.0;
    /// r4 - bound; negative means the moments violate the separability bound.
    double margin = 0.0;
    double min_pt_eigenvalue = 0.0;
    double de_vicente = 0.0;
    bool ppt = false;
    bool moment_violating = false;
    bool bound_entangled_evidence = false;
};

BoundEntanglementReport detect_bound_entanglement(const DensityMatrix &rho, double ppt_tol = 1e-10);

}  // namespace rmt

#endif
