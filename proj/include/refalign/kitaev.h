// Copyright 2026 The refalign Authors
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

#ifndef REFALIGN_KITAEV_H
#define REFALIGN_KITAEV_H

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "refalign/frames.h"
#include "refalign/report.h"
#include "refalign/session.h"

namespace refalign {

class RngStream;

/// Iterative round-trip estimation.
///
/// Level j repeats a 2^j-round-trip exchange n times. Its survival
/// frequency estimates p_j = 1/2 (1 + cos(2 pi 2^j T)), which pins
/// frac(2^j T) only up to reflection x -> 1 - x. The levels are sewn together
/// from the deepest one upward by halving, and a separate forward-spin stage
/// with p = 1/2 (1 + cos(pi T)) picks between T and 1 - T at the end.

struct StageEstimate {
    int level = 0;
    uint64_t repetitions = 0;
    /// Fraction of spin-up outcomes.
    double p_hat = 0;
    /// Chernoff precision the stage was sized for.
    double delta = 0.25;

    double c_hat() const {
        return 2 * p_hat - 1;
    }
};

enum class Sign { positive, negative, unresolved };

struct OverlapEstimate {
    /// Sewn estimate of gamma / pi, gamma = arccos(overlap), before folding.
    double t_hat = 0;
    /// min(gamma, pi - gamma) estimate, in [0, pi/2].
    double folded_angle = 0;
    /// |cos gamma| estimate.
    double magnitude = 1;
    Sign sign = Sign::unresolved;
    int k = 0;
    double epsilon = 0;
    CommLedger ledger;
    std::vector<StageEstimate> stages;
    double mirror_phat = 0;

    /// Signed overlap when the sign is resolved, else the magnitude.
    double signed_value() const;
};

struct KitaevOptions {
    /// Per-stage Chernoff precision on the survival frequency.
    double delta = 0.25;
};

/// Sign threshold on |cos gamma| for OverlapEstimate::sign.
inline constexpr double kSignThreshold = 0.25;

/// n = ceil((2 / delta^2) ln(2 / eps_stage)): repetitions so that a Bernoulli
/// mean is within delta with probability at least 1 - eps_stage.
/// Throws std::invalid_argument unless 0 < delta <= 1/2 and 0 < eps_stage < 1.
uint64_t chernoff_n(double delta, double eps_stage);

/// n round trips of 2^j exchanges each, probing along z.
StageEstimate estimate_cosine_level(Session &session, int j, uint64_t n, RngStream &rng);
/// Same with the generalized round trip for an axis pair.
StageEstimate estimate_overlap_level(Session &session, const AxisPair &pair, int j, uint64_t n, RngStream &rng);

/// Deterministic reconstruction of T from per-level estimates (levels 0..k-1
/// in order) and the forward-spin frequency mirror_phat.
FractionT sew_levels(std::span<const StageEstimate> stages, double mirror_phat);

/// The halving recursion alone, before the mirror choice. `flip_level`
/// replaces the chosen fraction f_j by 1 - f_j at that level (test hook).
double sew_folded(std::span<const StageEstimate> stages, std::optional<int> flip_level = std::nullopt);

/// Picks between x and 1 - x using the forward-spin frequency.
double resolve_mirror(double x, double mirror_phat);

/// k-bit estimate of T = theta / pi with failure budget epsilon split evenly
/// over the mirror stage and k levels. Requires 1 <= k <= 16, 0 < epsilon < 1.
IntervalEstimate estimate_theta(Session &session, int k, double epsilon, RngStream &rng, const KitaevOptions &opts = {});

/// Generalization to the angle between a Bob axis and an Alice axis.
OverlapEstimate estimate_overlap(Session &session, const AxisPair &pair, int k, double epsilon, RngStream &rng,
                                 const KitaevOptions &opts = {});

struct DirectionEstimate {
    Direction estimate = Direction::z();
    FidelityReport report;
    /// Magnitude estimates along x, y, z, (x+y)/rt2, (y+z)/rt2, (z+x)/rt2.
    std::vector<OverlapEstimate> overlaps;
    /// Fraction of sign-stage spins that agreed with the chosen orientation.
    double orientation_agreement = 1;
};

/// Bob-frame probe axes used by direction finding.
std::span<const Direction> direction_probe_axes();

/// Finds Alice's `alice_axis` in Bob's frame from six overlap magnitudes plus
/// one forward-spin orientation stage, each with budget epsilon / 7.
DirectionEstimate find_axis(Session &session, const Direction &alice_axis, int k, double epsilon, RngStream &rng,
                            const KitaevOptions &opts = {});

/// find_axis for Alice's z axis.
DirectionEstimate find_direction(Session &session, int k, double epsilon, RngStream &rng, const KitaevOptions &opts = {});

struct EulerEstimate {
    EulerAngles angles;
    DirectionEstimate z_axis;
    DirectionEstimate x_axis;
    CommLedger ledger;
};

/// All three Euler angles from Alice's z and x axes (budget epsilon / 2 each).
/// Throws DegenerateInput when the two estimated axes come out nearly parallel.
EulerEstimate estimate_euler(Session &session, int k, double epsilon, RngStream &rng, const KitaevOptions &opts = {});

}  // namespace refalign

#endif
