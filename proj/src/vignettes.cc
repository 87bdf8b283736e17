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

#include "refalign/vignettes.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "refalign/errors.h"
#include "refalign/parallel.h"
#include "refalign/rng.h"
#include "refalign/spinhalf.h"
#include "refalign/state_vector.h"

namespace refalign {

namespace {

constexpr uint64_t kTrialChunk = 4096;
constexpr int kSlots = 8;

using Counts = std::array<double, kSlots>;

struct Tally {
    uint64_t n = 0;
    double sum = 0;
    double sum_sq = 0;
    double max_error = 0;
    Counts counts{};
    CommLedger ledger;
    bool uniform = true;
};

double sgn(int outcome) {
    return outcome == 0 ? 1.0 : -1.0;
}

Vec3 scaled(const Vec3 &v, double s) {
    return {v[0] * s, v[1] * s, v[2] * s};
}

Vec3 add(const Vec3 &a, const Vec3 &b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

Direction truth_z(const Session &session) {
    return alice_axis_in_bob_frame(session.hidden(), Direction::z());
}

/// Unitary taking |0> to `q`.
ComplexMatrix2 preparation(const PureQubit &q) {
    return {q.up, -std::conj(q.down), q.down, std::conj(q.up)};
}

MultiQubitState singlet_register(unsigned qubits) {
    std::vector<Complex> amps(size_t{1} << qubits, Complex{0});
    const double r = 1 / std::sqrt(2.0);
    // (|0>_0 |1>_1 - |1>_0 |0>_1) / sqrt2 with qubit 0 the least significant bit.
    amps[2] = r;
    amps[1] = -r;
    return MultiQubitState::from_amplitudes(std::move(amps), kernels::Exec::serial);
}

Vec3 bloch_of(const ComplexMatrix2 &rho) {
    return {2 * rho.b.real(), -2 * rho.b.imag(), (rho.a - rho.d).real()};
}

/// Trial body: fidelity of Bob's guess. May bump `counts` and `max_error`.
template <class Fn>
VignetteResult run_vignette_trials(std::string name, uint64_t trials, uint64_t seed, Fn &&fn) {
    if (trials < 1) {
        throw std::invalid_argument("vignette: trials must be at least 1");
    }
    const uint64_t chunks = (trials + kTrialChunk - 1) / kTrialChunk;
    auto partial = run_trials(chunks, [&](size_t c) {
        Tally t;
        const uint64_t lo = c * kTrialChunk;
        const uint64_t hi = std::min(trials, lo + kTrialChunk);
        for (uint64_t i = lo; i < hi; i++) {
            RngStream trial_rng(seed, stream_index(i, name));
            RngStream frame_rng = trial_rng.derive("frame");
            RngStream proto_rng = trial_rng.derive("protocol");
            Session session(random_frame(frame_rng), seed);
            double f = fn(session, proto_rng, t.counts, t.max_error);
            t.sum += f;
            t.sum_sq += f * f;
            if (t.n == 0) {
                t.ledger = session.ledger();
            } else if (!(session.ledger() == t.ledger)) {
                t.uniform = false;
            }
            t.n++;
        }
        return t;
    });

    Tally total;
    for (const Tally &t : partial) {
        if (total.n == 0) {
            total.ledger = t.ledger;
        } else if (!(t.ledger == total.ledger)) {
            total.uniform = false;
        }
        total.uniform = total.uniform && t.uniform;
        total.n += t.n;
        total.sum += t.sum;
        total.sum_sq += t.sum_sq;
        total.max_error = std::max(total.max_error, t.max_error);
        for (int s = 0; s < kSlots; s++) {
            total.counts[s] += t.counts[s];
        }
    }
    if (!total.uniform) {
        throw std::logic_error("vignette " + name + ": per-trial communication differs between trials");
    }

    VignetteResult r;
    r.name = std::move(name);
    r.trials = trials;
    r.seed = seed;
    r.ledger = total.ledger;
    const double n = static_cast<double>(trials);
    r.avg_fidelity = total.sum / n;
    if (trials > 1) {
        double var = std::max(0.0, (total.sum_sq - n * r.avg_fidelity * r.avg_fidelity) / (n - 1));
        r.std_error = std::sqrt(var / n);
    }
    r.stats["max_state_error"] = total.max_error;
    for (int s = 0; s < kSlots; s++) {
        r.stats["slot" + std::to_string(s)] = total.counts[s] / n;
    }
    return r;
}

void rename_stats(VignetteResult &r, std::initializer_list<std::pair<int, const char *>> names) {
    std::map<std::string, double> out;
    out["max_state_error"] = r.stats["max_state_error"];
    for (auto [slot, name] : names) {
        out[name] = r.stats["slot" + std::to_string(slot)];
    }
    r.stats = std::move(out);
}

const std::array<Direction, 3> &product_axes() {
    static const std::array<Direction, 3> axes{Direction::z(), Direction::x(), Direction::y()};
    return axes;
}

std::array<double, 4> bell_probabilities_for(const ComplexMatrix2 &alice_op) {
    MultiQubitState s = singlet_register(2);
    s.apply(1, alice_op);
    s.cnot(0, 1);
    s.hadamard(0);
    std::vector<double> m = s.marginal(0, 2);
    return {m[0], m[1], m[2], m[3]};
}

Vec3 mat3_vec(const Mat3 &m, const Vec3 &v) {
    return mat_vec(m, v);
}

/// Closed-form contribution of Bell outcome `b` for measurement axis m, with
/// the optimal guesses written to `guess`.
double outcome_value(const FeedforwardMoments &mo, int b, const Vec3 &m, std::array<Vec3, 2> *guess) {
    Vec3 bm = mat3_vec(mo.b[b], m);
    double value = 0.5 * mo.c[b];
    for (int s = 0; s < 2; s++) {
        Vec3 v = add(scaled(mo.a[b], 0.5), scaled(bm, 0.5 * sgn(s)));
        double len = norm(v);
        if (guess != nullptr) {
            (*guess)[s] = len > 0 ? scaled(v, 1 / len) : scaled(m, sgn(s));
        }
        value += 0.5 * len;
    }
    return value;
}

Vec3 from_polar(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Vec3 fibonacci_point(int i, int points) {
    const double golden = M_PI * (3 - std::sqrt(5.0));
    double z = 1 - (2.0 * i + 1) / points;
    double r = std::sqrt(std::max(0.0, 1 - z * z));
    double a = golden * i;
    return {r * std::cos(a), r * std::sin(a), z};
}

}  // namespace

double forward_spins_trial(Session &session, int spins, GuessStrategy strategy, RngStream &rng) {
    if (spins < 1 || spins > 3) {
        throw std::invalid_argument("forward_spins: spin count must lie in [1, 3]");
    }
    const Direction n_a = truth_z(session);
    if (strategy == GuessStrategy::random) {
        return fidelity(n_a, random_direction(rng));
    }
    Vec3 g{0, 0, 0};
    for (int i = 0; i < spins; i++) {
        const Direction &axis = product_axes()[i];
        int o = forward_spin(session, Direction::z(), axis, rng);
        g = add(g, scaled(axis.vec(), sgn(o)));
    }
    return fidelity(n_a, Direction(g));
}

VignetteResult forward_spins_avg(int spins, uint64_t trials, uint64_t seed, GuessStrategy strategy) {
    if (spins < 1 || spins > 3) {
        throw std::invalid_argument("forward_spins: spin count must lie in [1, 3]");
    }
    std::string name = strategy == GuessStrategy::random ? "random-guess" : "forward-spins-" + std::to_string(spins);
    auto r = run_vignette_trials(name, trials, seed, [&](Session &s, RngStream &rng, Counts &, double &) {
        return forward_spins_trial(s, spins, strategy, rng);
    });
    r.stats.clear();
    return r;
}

Vec3 steered_bloch_vector(const EulerAngles &frame, int alice_outcome) {
    Direction n_a = alice_axis_in_bob_frame(frame, Direction::z());
    MultiQubitState s = singlet_register(2);
    s.apply(1, basis_to_z(n_a.vec()));
    s.project(1, alice_outcome);
    return bloch_of(s.reduced_density(0));
}

VignetteResult singlet_steering(uint64_t trials, uint64_t seed) {
    auto r = run_vignette_trials("singlet-steering", trials, seed, [](Session &session, RngStream &rng, Counts &, double &) {
        const Direction n_a = truth_z(session);
        MultiQubitState s = singlet_register(2);
        session.charge_qubits(Link::backward, 1, 1);
        int alice = s.measure_along(1, n_a.vec(), rng);
        send_cbits(session, Link::forward, 1);
        int bob = s.measure_along(0, Direction::z().vec(), rng);
        // Bob's half points along -sgn(alice) n_A.
        Vec3 g = scaled(Direction::z().vec(), -sgn(alice) * sgn(bob));
        return fidelity(n_a, Direction(g));
    });
    r.stats.clear();
    return r;
}

double antiparallel_overlap(const EulerAngles &frame, int alice_outcome) {
    Direction n_a = alice_axis_in_bob_frame(frame, Direction::z());
    MultiQubitState s = singlet_register(2);
    s.apply(1, basis_to_z(n_a.vec()));
    s.project(1, alice_outcome);
    ComplexMatrix2 rho = s.reduced_density(0);

    Vec3 m = scaled(n_a.vec(), -sgn(alice_outcome));
    PureQubit pm = PureQubit::along(m);
    PureQubit pminus = PureQubit::along(scaled(m, -1));
    PureQubit rho_m = rho * pm;
    double kept = std::sqrt(std::max(0.0, pm.inner(rho_m).real()));

    PureQubit sent = euler_rotation(frame).adjoint() * PureQubit::along(scaled(Direction::z().vec(), sgn(alice_outcome)));
    return kept * std::abs(pminus.inner(sent));
}

VignetteResult antiparallel_pair(uint64_t trials, uint64_t seed) {
    auto r = run_vignette_trials("antiparallel-pair", trials, seed,
                                 [](Session &session, RngStream &rng, Counts &counts, double &max_error) {
                                     const Direction n_a = truth_z(session);
                                     MultiQubitState s = singlet_register(2);
                                     session.charge_qubits(Link::backward, 1, 1);
                                     int alice = s.measure_along(1, n_a.vec(), rng);
                                     send_cbits(session, Link::forward, 1);
                                     max_error = std::max(max_error,
                                                          std::abs(1 - antiparallel_overlap(session.hidden(), alice)));
                                     // Alice returns a spin along her outcome direction, sgn(alice) z_A.
                                     Direction sent = alice == 0 ? Direction::z() : -Direction::z();
                                     int o_sent = forward_spin(session, sent, Direction::x(), rng);
                                     int o_kept = s.measure_along(0, Direction::z().vec(), rng);
                                     counts[0] += 1;
                                     Vec3 g = add(scaled(Direction::z().vec(), -sgn(alice) * sgn(o_kept)),
                                                  scaled(Direction::x().vec(), sgn(alice) * sgn(o_sent)));
                                     return fidelity(n_a, Direction(g));
                                 });
    rename_stats(r, {{0, "antiparallel_frequency"}});
    return r;
}

VignetteResult antiparallel_two_backward(uint64_t trials, uint64_t seed) {
    auto r = run_vignette_trials("antiparallel-two-backward", trials, seed,
                                 [](Session &session, RngStream &rng, Counts &counts, double &) {
                                     const Direction n_a = truth_z(session);
                                     MultiQubitState first = singlet_register(2);
                                     MultiQubitState second = singlet_register(2);
                                     session.charge_qubits(Link::backward, 2, 1);
                                     int a1 = first.measure_along(1, n_a.vec(), rng);
                                     int a2 = second.measure_along(1, n_a.vec(), rng);
                                     send_cbits(session, Link::forward, 2);
                                     counts[a1 + 2 * a2] += 1;
                                     counts[4] += a1 != a2 ? 1 : 0;
                                     int o1 = first.measure_along(0, Direction::z().vec(), rng);
                                     int o2 = second.measure_along(0, Direction::x().vec(), rng);
                                     Vec3 g = add(scaled(Direction::z().vec(), -sgn(a1) * sgn(o1)),
                                                  scaled(Direction::x().vec(), -sgn(a2) * sgn(o2)));
                                     return fidelity(n_a, Direction(g));
                                 });
    rename_stats(r, {{0, "outcome_up_up"}, {1, "outcome_down_up"}, {2, "outcome_up_down"}, {3, "outcome_down_down"},
                     {4, "antiparallel_frequency"}});
    r.stats.erase("max_state_error");
    return r;
}

std::string_view bell_name(int outcome) {
    switch (outcome) {
        case phi_plus:
            return "phi_plus";
        case phi_minus:
            return "phi_minus";
        case psi_plus:
            return "psi_plus";
        case psi_minus:
            return "psi_minus";
    }
    throw std::invalid_argument("bell_name: outcome must lie in [0, 3]");
}

std::array<double, 4> sigma_z_bell_probabilities(const EulerAngles &frame) {
    return bell_probabilities_for(alice_conjugate(ComplexMatrix2::pauli_z(), frame));
}

FeedforwardStrategy FeedforwardStrategy::fixed_z() {
    FeedforwardStrategy s;
    for (int b = 0; b < 4; b++) {
        s.axis[b] = {0, 0, 1};
        s.guess[b] = {Vec3{0, 0, 1}, Vec3{0, 0, -1}};
    }
    return s;
}

FeedforwardMoments feedforward_moments(int points, uint64_t seed) {
    if (points < 1) {
        throw std::invalid_argument("feedforward_moments: need at least one point");
    }
    RngStream lattice_rng(seed, stream_index(0, "feedforward-lattice"));
    const Mat3 q = so3_of(random_frame(lattice_rng));
    constexpr int kChunk = 1024;
    const size_t chunks = (static_cast<size_t>(points) + kChunk - 1) / kChunk;
    auto partial = run_trials(chunks, [&](size_t c) {
        FeedforwardMoments m;
        const int lo = static_cast<int>(c) * kChunk;
        const int hi = std::min(points, lo + kChunk);
        for (int i = lo; i < hi; i++) {
            Vec3 n = mat_vec(q, fibonacci_point(i, points));
            auto p = bell_probabilities_for(ComplexMatrix2::pauli_along(n));
            for (int b = 0; b < 4; b++) {
                m.c[b] += p[b];
                for (int r = 0; r < 3; r++) {
                    m.a[b][r] += p[b] * n[r];
                    for (int col = 0; col < 3; col++) {
                        m.b[b][r][col] += p[b] * n[r] * n[col];
                    }
                }
            }
        }
        return m;
    });
    FeedforwardMoments total;
    const double w = 1.0 / points;
    for (const auto &m : partial) {
        for (int b = 0; b < 4; b++) {
            total.c[b] += m.c[b];
            for (int r = 0; r < 3; r++) {
                total.a[b][r] += m.a[b][r];
                for (int col = 0; col < 3; col++) {
                    total.b[b][r][col] += m.b[b][r][col];
                }
            }
        }
    }
    for (int b = 0; b < 4; b++) {
        total.c[b] *= w;
        total.a[b] = scaled(total.a[b], w);
        for (int r = 0; r < 3; r++) {
            total.b[b][r] = scaled(total.b[b][r], w);
        }
    }
    return total;
}

double feedforward_objective(const FeedforwardStrategy &strategy, const FeedforwardMoments &mo) {
    double total = 0;
    for (int b = 0; b < 4; b++) {
        Vec3 bm = mat3_vec(mo.b[b], strategy.axis[b]);
        total += 0.5 * mo.c[b];
        for (int s = 0; s < 2; s++) {
            Vec3 v = add(scaled(mo.a[b], 0.5), scaled(bm, 0.5 * sgn(s)));
            total += 0.5 * dot(strategy.guess[b][s], v);
        }
    }
    return total;
}

FeedforwardStrategy optimize_feedforward(int resolution, uint64_t seed) {
    if (resolution < 32) {
        throw std::invalid_argument("optimize_feedforward: resolution must be at least 32");
    }
    constexpr int kQuadraturePoints = 20000;
    constexpr double kFinalStep = 0.5 * M_PI / 180;
    constexpr double kTolerance = 1e-4;
    const FeedforwardMoments mo = feedforward_moments(kQuadraturePoints, seed);

    // Coarse grid, evaluated in parallel; argmax in index order.
    std::vector<Vec3> grid(resolution);
    for (int i = 0; i < resolution; i++) {
        grid[i] = fibonacci_point(i, resolution);
    }

    FeedforwardStrategy out;
    for (int b = 0; b < 4; b++) {
        auto values = run_trials(grid.size(), [&](size_t i) { return outcome_value(mo, b, grid[i], nullptr); });
        size_t best_i = 0;
        for (size_t i = 1; i < values.size(); i++) {
            if (values[i] > values[best_i]) {
                best_i = i;
            }
        }
        const Vec3 &g0 = grid[best_i];
        double theta = std::acos(std::clamp(g0[2], -1.0, 1.0));
        double phi = std::atan2(g0[1], g0[0]);
        double best = values[best_i];

        // Coordinate ascent in (theta, phi), halving the step until it reaches the final level.
        double step = std::sqrt(4 * M_PI / resolution);
        double final_level_start = std::numeric_limits<double>::quiet_NaN();
        while (true) {
            const bool final_level = step <= kFinalStep;
            if (final_level && std::isnan(final_level_start)) {
                final_level_start = best;
            }
            bool moved = true;
            int sweeps = 0;
            while (moved && sweeps < 10000) {
                moved = false;
                sweeps++;
                for (int coord = 0; coord < 2; coord++) {
                    for (double dir : {-1.0, 1.0}) {
                        double t2 = theta + (coord == 0 ? dir * step : 0);
                        double p2 = phi + (coord == 1 ? dir * step : 0);
                        double v = outcome_value(mo, b, from_polar(t2, p2), nullptr);
                        if (v > best + 1e-15) {
                            best = v;
                            theta = t2;
                            phi = p2;
                            moved = true;
                        }
                    }
                }
            }
            if (final_level) {
                break;
            }
            step /= 2;
        }
        if (best - final_level_start > kTolerance) {
            throw ConvergenceFailure("optimize_feedforward: final refinement level improved the objective by " +
                                     std::to_string(best - final_level_start));
        }
        out.axis[b] = from_polar(theta, phi);
        outcome_value(mo, b, out.axis[b], &out.guess[b]);
    }
    out.objective = feedforward_objective(out, mo);
    return out;
}

VignetteResult entangled_sigma_z(uint64_t trials, uint64_t seed, const FeedforwardStrategy &strategy) {
    auto r = run_vignette_trials(
        "entangled-sigma-z", trials, seed, [&](Session &session, RngStream &rng, Counts &counts, double &max_error) {
            const Direction n_a = truth_z(session);
            MultiQubitState s = singlet_register(3);
            session.charge_qubits(Link::backward, 1, 1);
            s.apply(1, session.from_alice(ComplexMatrix2::pauli_z()));
            s.apply(2, preparation(session.from_alice(PureQubit::z_plus())));
            session.charge_qubits(Link::forward, 2, 1);

            s.cnot(0, 1);
            s.hadamard(0);
            std::vector<double> probs = s.marginal(0, 2);
            max_error = std::max(max_error, probs[psi_minus]);
            int b = static_cast<int>(measure(probs, rng));
            s.project(0, b & 1);
            s.project(1, b >> 1);
            counts[b] += 1;
            int o = s.measure_along(2, strategy.axis[b], rng);
            return fidelity(n_a, Direction(strategy.guess[b][o]));
        });
    rename_stats(r, {{0, "bell_phi_plus"}, {1, "bell_phi_minus"}, {2, "bell_psi_plus"}, {3, "bell_psi_minus"}});
    r.stats["max_singlet_probability"] = r.stats["max_state_error"];
    r.stats.erase("max_state_error");
    return r;
}

std::vector<std::string> vignette_names() {
    return {"forward-spin",      "forward-spins-2",           "forward-spins-3",  "random-guess",
            "singlet-steering",  "antiparallel-pair",         "antiparallel-two-backward",
            "entangled-sigma-z"};
}

VignetteResult run_vignette(std::string_view name, uint64_t trials, uint64_t seed) {
    if (name == "forward-spin" || name == "forward-spins-1") {
        VignetteResult r = forward_spins_avg(1, trials, seed);
        r.name = "forward-spin";
        return r;
    }
    if (name == "forward-spins-2") {
        return forward_spins_avg(2, trials, seed);
    }
    if (name == "forward-spins-3") {
        return forward_spins_avg(3, trials, seed);
    }
    if (name == "random-guess") {
        return forward_spins_avg(1, trials, seed, GuessStrategy::random);
    }
    if (name == "singlet-steering") {
        return singlet_steering(trials, seed);
    }
    if (name == "antiparallel-pair") {
        return antiparallel_pair(trials, seed);
    }
    if (name == "antiparallel-two-backward") {
        return antiparallel_two_backward(trials, seed);
    }
    if (name == "entangled-sigma-z") {
        return entangled_sigma_z(trials, seed, optimize_feedforward(64, seed));
    }
    throw std::invalid_argument("unknown vignette '" + std::string(name) + "'");
}

}  // namespace refalign
