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

#include "refalign/qpe.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "refalign/rng.h"
#include "refalign/spinhalf.h"
#include "refalign/state_vector.h"

namespace refalign {

namespace {

void check_x(int x) {
    if (x < 1 || x > kMaxQpeControls) {
        throw std::invalid_argument("qpe: register size must lie in [1, 20], got " + std::to_string(x));
    }
}

MultiQubitState prepared_register(const EulerAngles &hidden, int x, kernels::Exec exec) {
    const unsigned controls = static_cast<unsigned>(x);
    MultiQubitState s(controls + 1, exec);
    for (unsigned j = 0; j < controls; j++) {
        s.hadamard(j);
    }
    for (unsigned j = 0; j < controls; j++) {
        s.apply_controlled(j, controls, u_power(hidden, 1ULL << j));
    }
    s.inverse_qft(0, controls);
    return s;
}

}  // namespace

int register_size(int k, double epsilon) {
    if (k < 1) {
        throw std::invalid_argument("register_size: k must be at least 1");
    }
    if (!(epsilon > 0 && epsilon < 1)) {
        throw std::invalid_argument("register_size: epsilon must lie in (0, 1)");
    }
    double extra = std::log2(2 + 1 / (2 * epsilon));
    // log2 of an exact power of two can come out a few ulps high.
    return k + static_cast<int>(std::ceil(extra - 1e-12));
}

double qpe_t_from_outcome(uint64_t y, int x) {
    check_x(x);
    double f = static_cast<double>(y) / std::ldexp(1.0, x);
    return 2 * std::min(f, 1 - f);
}

std::vector<double> qpe_distribution(const EulerAngles &hidden, int x, kernels::Exec exec) {
    check_x(x);
    return prepared_register(hidden, x, exec).marginal(0, static_cast<unsigned>(x));
}

double qpe_success_probability(const EulerAngles &hidden, int k, double epsilon) {
    const int x = register_size(k, epsilon);
    const double t = hidden.theta / M_PI;
    const double tol = std::ldexp(1.0, -(k + 1));
    std::vector<double> probs = qpe_distribution(hidden, x);
    double p = 0;
    for (size_t y = 0; y < probs.size(); y++) {
        if (std::abs(qpe_t_from_outcome(y, x) - t) <= tol + 1e-12) {
            p += probs[y];
        }
    }
    return p;
}

QpeResult run_qpe_x(Session &session, int x, RngStream &rng) {
    check_x(x);
    const CommLedger before = session.ledger();
    for (int j = 0; j < x; j++) {
        const uint64_t m = 1ULL << j;
        session.charge_qubits(Link::backward, 1, 0);
        session.charge_round_trips(m);
        session.charge_qubits(Link::forward, 1, 0);
    }
    std::vector<double> probs = qpe_distribution(session.hidden(), x);
    double total = 0;
    for (double p : probs) {
        total += p;
    }
    for (double &p : probs) {
        p /= total;
    }
    QpeResult r;
    r.x = x;
    r.outcome = measure(probs, rng);
    r.t_hat = qpe_t_from_outcome(r.outcome, x);
    const CommLedger &after = session.ledger();
    r.ledger.forward_qubits = after.forward_qubits - before.forward_qubits;
    r.ledger.backward_qubits = after.backward_qubits - before.backward_qubits;
    r.ledger.forward_cbits = after.forward_cbits - before.forward_cbits;
    r.ledger.backward_cbits = after.backward_cbits - before.backward_cbits;
    r.ledger.rounds_sequential = after.rounds_sequential - before.rounds_sequential;
    r.ledger.rounds_parallel = after.rounds_parallel - before.rounds_parallel;
    r.ledger.round_trips = after.round_trips - before.round_trips;
    r.ledger.multiplier = after.multiplier;
    return r;
}

QpeResult run_qpe(Session &session, int k, double epsilon, RngStream &rng) {
    return run_qpe_x(session, register_size(k, epsilon), rng);
}

QpeLedger qpe_ledger_for_register(int x, Encoding encoding) {
    check_x(x);
    if (encoding == Encoding::bare) {
        throw std::invalid_argument("qpe_ledger: encoding must be logical-triple or clock-qubit");
    }
    Session s(EulerAngles{}, 0, encoding);
    RngStream rng(0, 0);
    QpeResult r = run_qpe_x(s, x, rng);
    QpeLedger out;
    out.total = r.ledger;
    out.multiplier = physical_multiplier(encoding);
    out.control_oneway = 2 * static_cast<uint64_t>(x);
    out.work_oneway = r.ledger.oneway_qubits() - out.control_oneway;
    return out;
}

QpeLedger qpe_ledger(int k, double epsilon, Encoding encoding) {
    return qpe_ledger_for_register(register_size(k, epsilon), encoding);
}

}  // namespace refalign
