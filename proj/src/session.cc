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

#include "refalign/session.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "refalign/rng.h"

namespace refalign {

int physical_multiplier(Encoding encoding) {
    return encoding == Encoding::logical_triple ? 3 : 1;
}

std::string_view encoding_name(Encoding encoding) {
    switch (encoding) {
        case Encoding::bare:
            return "bare";
        case Encoding::logical_triple:
            return "logical-triple";
        case Encoding::clock_qubit:
            return "clock-qubit";
    }
    return "?";
}

Encoding parse_encoding(std::string_view name) {
    if (name == "bare") {
        return Encoding::bare;
    }
    if (name == "logical" || name == "logical-triple") {
        return Encoding::logical_triple;
    }
    if (name == "clock" || name == "clock-qubit") {
        return Encoding::clock_qubit;
    }
    throw std::invalid_argument("unknown encoding '" + std::string(name) + "'");
}

CommLedger &CommLedger::operator+=(const CommLedger &o) {
    forward_qubits += o.forward_qubits;
    backward_qubits += o.backward_qubits;
    forward_cbits += o.forward_cbits;
    backward_cbits += o.backward_cbits;
    rounds_sequential += o.rounds_sequential;
    rounds_parallel += o.rounds_parallel;
    round_trips += o.round_trips;
    return *this;
}

void CommLedger::merge_concurrent(const CommLedger &o) {
    uint64_t par = std::max(rounds_parallel, o.rounds_parallel);
    *this += o;
    rounds_parallel = par;
}

Session::Session(const EulerAngles &hidden, uint64_t seed, Encoding encoding)
    : hidden_(hidden), seed_(seed), encoding_(encoding), rotation_(euler_rotation(hidden)) {
    ledger_.multiplier = physical_multiplier(encoding);
}

ComplexMatrix2 Session::from_alice(const ComplexMatrix2 &op) const {
    return rotation_.adjoint() * op * rotation_;
}

PureQubit Session::from_alice(const PureQubit &state) const {
    return rotation_.adjoint() * state;
}

void Session::add_rounds(uint64_t rounds) {
    ledger_.rounds_sequential += rounds;
    if (batch_ != nullptr) {
        batch_->longest_ = std::max(batch_->longest_, rounds);
    } else {
        ledger_.rounds_parallel += rounds;
    }
}

void Session::charge_qubits(Link link, uint64_t count, uint64_t rounds) {
    if (count == 0) {
        return;
    }
    (link == Link::forward ? ledger_.forward_qubits : ledger_.backward_qubits) += count;
    add_rounds(rounds);
}

void Session::charge_cbits(Link link, uint64_t count, uint64_t rounds) {
    if (count == 0) {
        return;
    }
    (link == Link::forward ? ledger_.forward_cbits : ledger_.backward_cbits) += count;
    add_rounds(rounds);
}

void Session::charge_round_trips(uint64_t m) {
    ledger_.forward_qubits += m;
    ledger_.backward_qubits += m;
    ledger_.round_trips += m;
    add_rounds(2 * m);
}

ParallelBatch::ParallelBatch(Session &session) : session_(session), outer_(session.batch_) {
    session_.batch_ = this;
}

ParallelBatch::~ParallelBatch() {
    session_.batch_ = outer_;
    if (outer_ != nullptr) {
        outer_->longest_ = std::max(outer_->longest_, longest_);
    } else {
        session_.ledger_.rounds_parallel += longest_;
    }
}

namespace {

ComplexMatrix2 matrix_power(ComplexMatrix2 base, unsigned long long m) {
    ComplexMatrix2 result = ComplexMatrix2::identity();
    while (m > 0) {
        if (m & 1) {
            result = result * base;
        }
        base = base * base;
        m >>= 1;
    }
    return result;
}

int sample_bit(double p_zero, RngStream &rng) {
    p_zero = std::clamp(p_zero, 0.0, 1.0);
    std::array<double, 2> probs{p_zero, 1 - p_zero};
    return static_cast<int>(measure(probs, rng));
}

}  // namespace

int round_trip_z(Session &session, unsigned long long m, RngStream &rng) {
    if (m == 0) {
        throw std::invalid_argument("round_trip_z: m must be at least 1");
    }
    double p0 = survival_probability(u_power(session.hidden(), m), PureQubit::z_plus());
    session.charge_round_trips(m);
    return sample_bit(p0, rng);
}

int round_trip(Session &session, const AxisPair &pair, unsigned long long m, RngStream &rng) {
    if (pair.is_zz()) {
        return round_trip_z(session, m, rng);
    }
    if (m == 0) {
        throw std::invalid_argument("round_trip: m must be at least 1");
    }
    ComplexMatrix2 bob_op = ComplexMatrix2::pauli_along(pair.bob_axis.vec());
    ComplexMatrix2 alice_op = session.from_alice(ComplexMatrix2::pauli_along(pair.alice_axis.vec()));
    ComplexMatrix2 u = bob_op * alice_op;
    double p0 = survival_probability(matrix_power(u, m), PureQubit::along(pair.bob_axis.vec()));
    session.charge_round_trips(m);
    return sample_bit(p0, rng);
}

int forward_spin(Session &session, const Direction &alice_axis, const Direction &bob_axis, RngStream &rng) {
    PureQubit sent = session.from_alice(PureQubit::along(alice_axis.vec()));
    PureQubit probe = PureQubit::along(bob_axis.vec());
    double p0 = std::norm(probe.inner(sent));
    session.charge_qubits(Link::forward, 1, 1);
    return sample_bit(p0, rng);
}

void send_cbits(Session &session, Link link, uint64_t count) {
    session.charge_cbits(link, count, count == 0 ? 0 : 1);
}

}  // namespace refalign
