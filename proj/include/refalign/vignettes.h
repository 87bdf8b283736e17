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

#ifndef REFALIGN_VIGNETTES_H
#define REFALIGN_VIGNETTES_H

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "refalign/frames.h"
#include "refalign/session.h"

namespace refalign {

class RngStream;

/// Small fixed-communication protocols in which Bob guesses Alice's z axis.
/// Every trial draws a Haar-random frame, so n_A is uniform on the sphere.

struct VignetteResult {
    std::string name;
    uint64_t trials = 0;
    double avg_fidelity = 0;
    /// Sample standard deviation of per-trial fidelity over sqrt(trials).
    double std_error = 0;
    /// Communication of one trial. Every trial of a vignette costs the same.
    CommLedger ledger;
    uint64_t seed = 0;
    /// Vignette-specific frequencies, e.g. Bell outcome rates.
    std::map<std::string, double> stats;
};

enum class GuessStrategy {
    /// Measure spin i along the i-th of (z, x, y) and guess along the sum of outcome axes.
    measure,
    /// Ignore the spins and guess a uniformly random direction.
    random,
};

/// Per-trial fidelity of the product strategy with `spins` forward spins (1..3)
/// for a given frame. Charges the session.
double forward_spins_trial(Session &session, int spins, GuessStrategy strategy, RngStream &rng);

VignetteResult forward_spins_avg(int spins, uint64_t trials, uint64_t seed, GuessStrategy strategy = GuessStrategy::measure);

/// Bob's kept half of a singlet after Alice measures the other half along her
/// z axis with the given outcome (0 = up). Returned as a Bloch vector in Bob's frame.
Vec3 steered_bloch_vector(const EulerAngles &frame, int alice_outcome);

VignetteResult singlet_steering(uint64_t trials, uint64_t seed);

/// |<pair | m, -m>| for the steered qubit plus Alice's returned spin, where m is
/// the steered direction. Equals 1 in exact arithmetic.
double antiparallel_overlap(const EulerAngles &frame, int alice_outcome);

/// One backward qubit, then one forward qubit and one forward bit.
VignetteResult antiparallel_pair(uint64_t trials, uint64_t seed);
/// Two backward qubits and two forward bits; the pair is antiparallel only half the time.
VignetteResult antiparallel_two_backward(uint64_t trials, uint64_t seed);

/// Bell outcome labels after CNOT(0 -> 1), H(0), reading (b0, b1) as b0 + 2 b1:
/// Phi+ = 0, Phi- = 1, Psi+ = 2, Psi- = 3.
enum BellOutcome : int { phi_plus = 0, phi_minus = 1, psi_plus = 2, psi_minus = 3 };
std::string_view bell_name(int outcome);

/// Bell outcome probabilities for a singlet whose travelling half received
/// Alice's sigma_z, computed from amplitudes.
std::array<double, 4> sigma_z_bell_probabilities(const EulerAngles &frame);

/// For each Bell outcome: the axis Bob measures the third spin along and his
/// guesses for outcome up and down.
struct FeedforwardStrategy {
    std::array<Vec3, 4> axis{};
    std::array<std::array<Vec3, 2>, 4> guess{};
    /// Average fidelity predicted by the sphere quadrature.
    double objective = 0;

    /// Measure along z and guess along the outcome, whatever the Bell outcome.
    static FeedforwardStrategy fixed_z();
};

/// Sphere moments of the Bell outcome probabilities P_b(n):
/// c_b = E[P_b], A_b = E[P_b n], B_b = E[P_b n n^T].
struct FeedforwardMoments {
    std::array<double, 4> c{};
    std::array<Vec3, 4> a{};
    std::array<Mat3, 4> b{};
};

/// Quadrature over a Fibonacci lattice of `points` directions, rotated by a
/// seeded random frame. Chunked reduction in a fixed order.
FeedforwardMoments feedforward_moments(int points, uint64_t seed);

double feedforward_objective(const FeedforwardStrategy &strategy, const FeedforwardMoments &moments);

/// Maximizes the average fidelity over the measurement axis of each Bell
/// outcome (guesses are optimal in closed form for a fixed axis). Starts on a
/// grid of `resolution` directions and refines locally until the step is at
/// most 0.5 degrees. Throws ConvergenceFailure when the last refinement still
/// improves the objective by more than 1e-4. Requires resolution >= 32.
FeedforwardStrategy optimize_feedforward(int resolution, uint64_t seed);

/// Singlet half out, sigma_z by Alice, returned with a fresh spin along her z;
/// Bob does a Bell measurement then the feedforward measurement on the third spin.
VignetteResult entangled_sigma_z(uint64_t trials, uint64_t seed, const FeedforwardStrategy &strategy);

/// Names accepted by run_vignette.
std::vector<std::string> vignette_names();
/// Dispatches by name. Throws std::invalid_argument for unknown names.
VignetteResult run_vignette(std::string_view name, uint64_t trials, uint64_t seed);

}  // namespace refalign

#endif
