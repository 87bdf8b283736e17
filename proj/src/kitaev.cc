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

#include "refalign/kitaev.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "refalign/rng.h"

namespace refalign {

namespace {

constexpr double kTieTolerance = 1e-12;

double circular_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), 1.0);
    return std::min(d, 1 - d);
}

double wrap_unit(double x) {
    x = std::fmod(x, 1.0);
    if (x < 0) {
        x += 1;
    }
    return x >= 1 ? 0 : x;
}

double folded_level_fraction(const StageEstimate &s) {
    return std::acos(std::clamp(s.c_hat(), -1.0, 1.0)) / (2 * M_PI);
}

void check_k_epsilon(int k, double epsilon) {
    if (k < 1 || k > 16) {
        throw std::invalid_argument("k must lie in [1, 16], got " + std::to_string(k));
    }
    if (!(epsilon > 0 && epsilon < 1)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
}

// Traffic between two ledger snapshots. The parallel depth comes from the
// enclosing batch, because a nested batch reports its depth to the outer one.
CommLedger ledger_slice(const CommLedger &after, const CommLedger &before, uint64_t depth) {
    CommLedger d;
    d.forward_qubits = after.forward_qubits - before.forward_qubits;
    d.backward_qubits = after.backward_qubits - before.backward_qubits;
    d.forward_cbits = after.forward_cbits - before.forward_cbits;
    d.backward_cbits = after.backward_cbits - before.backward_cbits;
    d.rounds_sequential = after.rounds_sequential - before.rounds_sequential;
    d.rounds_parallel = depth;
    d.round_trips = after.round_trips - before.round_trips;
    d.multiplier = after.multiplier;
    return d;
}

StageEstimate run_level(Session &session, const AxisPair &pair, int j, uint64_t n, RngStream &rng) {
    if (j < 0 || j > 62) {
        throw std::invalid_argument("level must lie in [0, 62]");
    }
    if (n < 1) {
        throw std::invalid_argument("repetitions must be at least 1");
    }
    const unsigned long long m = 1ULL << j;
    uint64_t ups = 0;
    for (uint64_t r = 0; r < n; r++) {
        ups += round_trip(session, pair, m, rng) == 0 ? 1 : 0;
    }
    StageEstimate s;
    s.level = j;
    s.repetitions = n;
    s.p_hat = static_cast<double>(ups) / static_cast<double>(n);
    return s;
}

}  // namespace

double OverlapEstimate::signed_value() const {
    return sign == Sign::negative ? -magnitude : magnitude;
}

uint64_t chernoff_n(double delta, double eps_stage) {
    if (!(delta > 0 && delta <= 0.5)) {
        throw std::invalid_argument("chernoff_n: delta must lie in (0, 1/2]");
    }
    if (!(eps_stage > 0 && eps_stage < 1)) {
        throw std::invalid_argument("chernoff_n: eps_stage must lie in (0, 1)");
    }
    double n = (2 / (delta * delta)) * std::log(2 / eps_stage);
    // Values that are integers in exact arithmetic can land a few ulps above.
    return static_cast<uint64_t>(std::ceil(n - 1e-9));
}

StageEstimate estimate_cosine_level(Session &session, int j, uint64_t n, RngStream &rng) {
    return run_level(session, AxisPair::zz(), j, n, rng);
}

StageEstimate estimate_overlap_level(Session &session, const AxisPair &pair, int j, uint64_t n, RngStream &rng) {
    return run_level(session, pair, j, n, rng);
}

double sew_folded(std::span<const StageEstimate> stages, std::optional<int> flip_level) {
    const int k = static_cast<int>(stages.size());
    if (k < 1) {
        throw std::invalid_argument("sew_levels: need at least one level");
    }
    double f = folded_level_fraction(stages[k - 1]);
    if (flip_level == k - 1) {
        f = wrap_unit(1 - f);
    }
    for (int j = k - 2; j >= 0; j--) {
        const double a = folded_level_fraction(stages[j]);
        const std::array<double, 2> halves{f / 2, f / 2 + 0.5};
        double best = halves[0];
        double best_d = std::numeric_limits<double>::infinity();
        for (double h : halves) {
            double d = std::min(circular_distance(h, a), circular_distance(h, 1 - a));
            if (d < best_d - kTieTolerance || (std::abs(d - best_d) <= kTieTolerance && h < best)) {
                best = h;
                best_d = d;
            }
        }
        f = best;
        if (flip_level == j) {
            f = wrap_unit(1 - f);
        }
    }
    return f;
}

double resolve_mirror(double x, double mirror_phat) {
    double lo = std::min(x, 1 - x);
    double hi = std::max(x, 1 - x);
    double e_lo = std::abs(mirror_phat - 0.5 * (1 + std::cos(M_PI * lo)));
    double e_hi = std::abs(mirror_phat - 0.5 * (1 + std::cos(M_PI * hi)));
    return e_hi < e_lo - kTieTolerance ? hi : lo;
}

FractionT sew_levels(std::span<const StageEstimate> stages, double mirror_phat) {
    if (!(mirror_phat >= 0 && mirror_phat <= 1)) {
        throw std::invalid_argument("sew_levels: mirror_phat must lie in [0, 1]");
    }
    return FractionT(resolve_mirror(sew_folded(stages), mirror_phat));
}

OverlapEstimate estimate_overlap(Session &session, const AxisPair &pair, int k, double epsilon, RngStream &rng,
                                 const KitaevOptions &opts) {
    check_k_epsilon(k, epsilon);
    const uint64_t n = chernoff_n(opts.delta, epsilon / (k + 1));
    const CommLedger before = session.ledger();

    OverlapEstimate out;
    out.k = k;
    out.epsilon = epsilon;
    uint64_t depth = 0;
    {
        ParallelBatch batch(session);
        RngStream mirror_rng = rng.derive("mirror");
        uint64_t ups = 0;
        for (uint64_t r = 0; r < n; r++) {
            ups += forward_spin(session, pair.alice_axis, pair.bob_axis, mirror_rng) == 0 ? 1 : 0;
        }
        out.mirror_phat = static_cast<double>(ups) / static_cast<double>(n);
        for (int j = 0; j < k; j++) {
            RngStream level_rng = rng.derive(static_cast<uint64_t>(j), "level");
            StageEstimate s = run_level(session, pair, j, n, level_rng);
            s.delta = opts.delta;
            out.stages.push_back(s);
        }
        depth = batch.longest();
    }

    out.t_hat = sew_levels(out.stages, out.mirror_phat).value();
    double folded_t = std::min(out.t_hat, 1 - out.t_hat);
    out.folded_angle = M_PI * folded_t;
    out.magnitude = std::cos(out.folded_angle);
    if (out.magnitude >= kSignThreshold) {
        out.sign = out.t_hat < 0.5 ? Sign::positive : Sign::negative;
    }
    out.ledger = ledger_slice(session.ledger(), before, depth);
    return out;
}

IntervalEstimate estimate_theta(Session &session, int k, double epsilon, RngStream &rng, const KitaevOptions &opts) {
    OverlapEstimate o = estimate_overlap(session, AxisPair::zz(), k, epsilon, rng, opts);
    return IntervalEstimate::k_bit(o.t_hat, k, epsilon);
}

std::span<const Direction> direction_probe_axes() {
    static const std::array<Direction, 6> axes{
        Direction::x(),
        Direction::y(),
        Direction::z(),
        Direction(Vec3{1, 1, 0}),
        Direction(Vec3{0, 1, 1}),
        Direction(Vec3{1, 0, 1}),
    };
    return axes;
}

DirectionEstimate find_axis(Session &session, const Direction &alice_axis, int k, double epsilon, RngStream &rng,
                            const KitaevOptions &opts) {
    check_k_epsilon(k, epsilon);
    const double eps_part = epsilon / 7;
    const CommLedger before = session.ledger();
    auto axes = direction_probe_axes();

    DirectionEstimate out;
    Direction u_hat = Direction::z();
    uint64_t depth = 0;
    {
        ParallelBatch batch(session);
        for (size_t i = 0; i < axes.size(); i++) {
            RngStream axis_rng = rng.derive(i, "axis");
            out.overlaps.push_back(estimate_overlap(session, AxisPair{axes[i], alice_axis}, k, eps_part, axis_rng, opts));
        }

        std::array<double, 3> mag{};
        for (int a = 0; a < 3; a++) {
            mag[a] = out.overlaps[a].magnitude;
        }
        // Diagonal probe for the unordered pair {a, b}: xy -> 3, yz -> 4, zx -> 5.
        auto diag = [&](int a, int b) {
            int lo = std::min(a, b);
            int hi = std::max(a, b);
            int idx = (lo == 0 && hi == 1) ? 3 : (lo == 1 && hi == 2) ? 4 : 5;
            return out.overlaps[idx].magnitude;
        };

        const double tau = std::ldexp(1.0, -k + 1);
        int anchor = 0;
        for (int a = 1; a < 3; a++) {
            if (mag[a] > mag[anchor]) {
                anchor = a;
            }
        }
        std::array<double, 3> comp{};
        for (int b = 0; b < 3; b++) {
            double sign = 1;
            if (b != anchor && mag[b] > tau && mag[anchor] > tau) {
                double d = diag(anchor, b);
                double cross_term = d * d - (mag[anchor] * mag[anchor] + mag[b] * mag[b]) / 2;
                sign = cross_term > 0 ? 1 : -1;
            }
            comp[b] = sign * mag[b];
        }
        if (norm(comp) > 0) {
            u_hat = Direction(comp);
        } else {
            std::array<double, 3> fallback{};
            fallback[anchor] = 1;
            u_hat = Direction(fallback);
        }

        const uint64_t n_sign = chernoff_n(opts.delta, eps_part);
        RngStream sign_rng = rng.derive("orientation");
        uint64_t agree = 0;
        for (uint64_t r = 0; r < n_sign; r++) {
            agree += forward_spin(session, alice_axis, u_hat, sign_rng) == 0 ? 1 : 0;
        }
        double frac = static_cast<double>(agree) / static_cast<double>(n_sign);
        if (frac < 0.5) {
            u_hat = -u_hat;
            frac = 1 - frac;
        }
        out.orientation_agreement = frac;
        depth = batch.longest();
    }

    out.estimate = u_hat;
    Direction truth = alice_axis_in_bob_frame(session.hidden(), alice_axis);
    out.report = score_direction(session.hidden(), truth, u_hat, k, ledger_slice(session.ledger(), before, depth));
    return out;
}

DirectionEstimate find_direction(Session &session, int k, double epsilon, RngStream &rng, const KitaevOptions &opts) {
    return find_axis(session, Direction::z(), k, epsilon, rng, opts);
}

EulerEstimate estimate_euler(Session &session, int k, double epsilon, RngStream &rng, const KitaevOptions &opts) {
    check_k_epsilon(k, epsilon);
    const CommLedger before = session.ledger();
    EulerEstimate out;
    uint64_t depth = 0;
    {
        ParallelBatch batch(session);
        RngStream z_rng = rng.derive("column-z");
        RngStream x_rng = rng.derive("column-x");
        out.z_axis = find_axis(session, Direction::z(), k, epsilon / 2, z_rng, opts);
        out.x_axis = find_axis(session, Direction::x(), k, epsilon / 2, x_rng, opts);
        depth = batch.longest();
    }
    out.ledger = ledger_slice(session.ledger(), before, depth);
    out.angles = euler_from_columns(out.z_axis.estimate, out.x_axis.estimate);
    return out;
}

}  // namespace refalign
