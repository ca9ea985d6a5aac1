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

// Randomized-measurement engine.
//
// One round draws a Haar-random unitary per party, computes the outcome
// distribution of the rotated computational-basis measurement, and samples
// a finite number of shots from it. Every subset S is evaluated from the same
// shots by assigning each outcome the product of the local observable
// eigenvalues over the parties in S, then grouping outcomes with equal value.
// The squared expectation is estimated without bias from the grouped counts,
// and the moment R_S is the mean over rounds.

#ifndef RMT_PROTOCOL_H
#define RMT_PROTOCOL_H

#include <cstdint>
#include <map>
#include <vector>

#include "rmt/bloch.h"
#include "rmt/invariants.h"
#include "rmt/linalg.h"
#include "rmt/parties.h"
#include "rmt/rng.h"

namespace rmt {

struct ProtocolConfig {
    int num_unitaries = 4000;
    int shots_per_unitary = 5300;
    /// Subsets to evaluate; empty means every non-empty subset.
    std::vector<PartySet> subsets;
    uint64_t seed = 0;
    /// Eigenvalues of the diagonal local observable; empty means
    /// default_observable(d) for each party.
    std::vector<double> observable;

    /// Throws InvalidArgument unless M >= 1 and N >= 2.
    void validate() const;
};

/// sigma_z for qubits, diag(sqrt(3/2), 0, -sqrt(3/2)) for qutrits. Other
/// dimensions have no default and throw.
std::vector<double> default_observable(int d);

struct ShotCounts {
    std::vector<int64_t> counts;
    int64_t total = 0;
};

struct MomentEstimate {
    double value = 0.0;
    /// Empirical standard deviation of the per-unitary estimates over sqrt(M).
    double std_error = 0.0;
    int num_unitaries = 0;
    int shots_per_unitary = 0;
    uint64_t seed = 0;
};

/// Ginibre matrix, QR, then the phases of diag(R) folded into Q.
CMatrix haar_unitary(int d, Rng &rng);

/// p_i = <i| U rho U^dagger |i> with U = U_1 (x) ... (x) U_n. Entries below
/// zero from rounding are clipped.
RVector outcome_probs(const DensityMatrix &rho, const std::vector<CMatrix> &unitaries);

/// Multinomial draw of n events.
ShotCounts sample_counts(const RVector &probs, int64_t n, Rng &rng);

/// Value of the observable product over `subset` for every joint outcome.
std::vector<double> outcome_values(const SubsystemShape &shape, PartySet subset, const std::vector<double> &observable);

/// Counts summed over outcomes that share a value; `values` is ascending.
struct GroupedOutcomes {
    std::vector<double> values;
    ShotCounts counts;
};
GroupedOutcomes group_outcomes(const ShotCounts &counts, const std::vector<double> &values);

/// Unbiased estimator of (sum_i X_i p_i)^2 built from the unbiased estimators
/// of p_i^2 and p_i p_j. Negative values are legitimate. Needs N >= 2.
double estimate_E2(const ShotCounts &counts, const std::vector<double> &values);

/// Unbiased estimator of (sum_i X_i p_i)^4 from power sums over distinct
/// ordered shot quadruples. Needs N >= 4.
double estimate_E4(const ShotCounts &counts, const std::vector<double> &values);

/// R_S^(2) estimated with the protocol. Deterministic for a fixed config.
MomentEstimate estimate_R2(const DensityMatrix &rho, PartySet subset, const ProtocolConfig &cfg);

/// All requested subsets from one shared set of rounds.
std::map<PartySet, MomentEstimate> estimate_R2_subsets(const DensityMatrix &rho, const ProtocolConfig &cfg);

/// Exact R_S^(2) of a three-qubit state with sigma_z observables:
/// 3^-|S| times the summed alpha^2 over Pauli coefficients supported on S.
double analytic_R2(const DensityMatrix &rho, PartySet subset);

struct SectorLengthEstimate {
    SectorLengths value;
    SectorLengths std_error;
    /// Standard error of A2 + A3 - 3(1 + A1), taken over rounds.
    double strong_bisep_std_error = 0.0;
    int num_unitaries = 0;
    int shots_per_unitary = 0;
    uint64_t seed = 0;
};

/// Sector lengths from the seven subsets of a three-qubit state. Each A_k is
/// combined per round before averaging, so its standard error includes the
/// covariance between subsets sharing the same shots.
SectorLengthEstimate estimate_sector_lengths(const DensityMatrix &rho, const ProtocolConfig &cfg);

/// E_U[<0|U tau U^dagger|0>^t] for a diagonal observable, t >= 1:
/// sum over permutations of t elements of prod over cycles of tr(tau^len),
/// divided by d(d+1)...(d+t-1).
double haar_single_qudit_moment(const std::vector<double> &observable, int t);

/// Finite-shot second and fourth moments of a two-qudit state, divided by the
/// exact Haar moments of a pure product state. On this scale they are
/// directly comparable with moments_from_T().
struct MomentPairEstimate {
    MomentEstimate r2;
    MomentEstimate r4;
};
MomentPairEstimate estimate_bipartite_moments(const DensityMatrix &rho, const ProtocolConfig &cfg);

/// Monte Carlo check of moments_from_T(). Draws Haar local unitaries, takes
/// the exact expectation tr(rho U tau U^dagger (x) V tau V^dagger), and
/// averages its square and fourth power, normalized as above.
struct HaarOracleResult {
    MomentEstimate r2;
    MomentEstimate r4;
    MomentPair formula;
    double z2 = 0.0;
    double z4 = 0.0;
};
HaarOracleResult haar_moment_oracle(const DensityMatrix &rho, int num_samples, uint64_t seed);

/// Throws ConsistencyError if either |z| exceeds max_sigma.
void require_consistent(const HaarOracleResult &result, double max_sigma);

}  // namespace rmt

#endif
