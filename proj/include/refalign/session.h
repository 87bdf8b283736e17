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

#ifndef REFALIGN_SESSION_H
#define REFALIGN_SESSION_H

#include <cstdint>
#include <string_view>

#include "refalign/frames.h"
#include "refalign/spinhalf.h"

namespace refalign {

class RngStream;

/// How one logical qubit is carried physically.
enum class Encoding {
    bare,            // one spin-1/2 per qubit
    logical_triple,  // three-spin rotationally invariant logical qubit
    clock_qubit,     // energy-eigenstate qubit, needs synchronised clocks
};

int physical_multiplier(Encoding encoding);
std::string_view encoding_name(Encoding encoding);
/// Accepts "bare", "logical", "logical-triple", "clock", "clock-qubit".
Encoding parse_encoding(std::string_view name);

/// Alice -> Bob is forward, Bob -> Alice is backward.
enum class Link { forward, backward };

/// Communication accounting. Qubit counts are logical; physical counts apply
/// the encoding multiplier.
struct CommLedger {
    uint64_t forward_qubits = 0;
    uint64_t backward_qubits = 0;
    uint64_t forward_cbits = 0;
    uint64_t backward_cbits = 0;
    uint64_t rounds_sequential = 0;
    uint64_t rounds_parallel = 0;
    /// Number of Bob->Alice->Bob round trips (the unit used by N = n(2^k - 1)).
    uint64_t round_trips = 0;
    int multiplier = 1;

    uint64_t oneway_qubits() const {
        return forward_qubits + backward_qubits;
    }
    uint64_t physical_forward_qubits() const {
        return forward_qubits * multiplier;
    }
    uint64_t physical_backward_qubits() const {
        return backward_qubits * multiplier;
    }
    uint64_t physical_oneway_qubits() const {
        return oneway_qubits() * multiplier;
    }

    /// Sequential composition: every count adds.
    CommLedger &operator+=(const CommLedger &other);
    /// Concurrent composition: counts add, rounds_parallel takes the max.
    void merge_concurrent(const CommLedger &other);

    bool operator==(const CommLedger &) const = default;
};

class ParallelBatch;

/// One two-party protocol run against a hidden frame. Confined to one worker.
class Session {
   public:
    Session(const EulerAngles &hidden, uint64_t seed, Encoding encoding = Encoding::bare);

    const EulerAngles &hidden() const {
        return hidden_;
    }
    uint64_t seed() const {
        return seed_;
    }
    Encoding encoding() const {
        return encoding_;
    }
    const CommLedger &ledger() const {
        return ledger_;
    }
    /// R for the hidden frame.
    const ComplexMatrix2 &rotation() const {
        return rotation_;
    }
    /// An Alice-frame operator written in Bob's frame (R^dagger op R).
    ComplexMatrix2 from_alice(const ComplexMatrix2 &op) const;
    /// An Alice-frame pure state written in Bob's frame (R^dagger |s>).
    PureQubit from_alice(const PureQubit &state) const;

    /// Records traffic. `rounds` is the number of sequential one-way hops it needs.
    void charge_qubits(Link link, uint64_t count, uint64_t rounds);
    void charge_cbits(Link link, uint64_t count, uint64_t rounds);
    void charge_round_trips(uint64_t m);

   private:
    friend class ParallelBatch;
    void add_rounds(uint64_t rounds);

    EulerAngles hidden_;
    uint64_t seed_;
    Encoding encoding_;
    ComplexMatrix2 rotation_;
    CommLedger ledger_;
    ParallelBatch *batch_ = nullptr;
};

/// While alive, every exchange charged to the session is treated as part of one
/// concurrent batch: sequential rounds still add up, but the parallel round
/// count grows only by the longest single exchange in the batch.
class ParallelBatch {
   public:
    explicit ParallelBatch(Session &session);
    ~ParallelBatch();
    ParallelBatch(const ParallelBatch &) = delete;
    ParallelBatch &operator=(const ParallelBatch &) = delete;
    /// Longest single exchange so far, which is the batch's parallel depth.
    uint64_t longest() const {
        return longest_;
    }

   private:
    friend class Session;
    Session &session_;
    ParallelBatch *outer_;
    uint64_t longest_ = 0;
};

/// Bob sends |z+> to Alice and back m times, both applying sigma_z in their
/// own frames, then measures in his z basis. Returns 0 for spin up, which has
/// probability cos^2(m theta).
int round_trip_z(Session &session, unsigned long long m, RngStream &rng);

/// Generalized round trip: Bob probes along pair.bob_axis, Alice applies her
/// pi-rotation about pair.alice_axis and Bob his about pair.bob_axis. Outcome 0
/// (spin up along bob_axis) has probability cos^2(m gamma), cos gamma = overlap.
/// Identical to round_trip_z, draw for draw, when the pair is (z, z).
int round_trip(Session &session, const AxisPair &pair, unsigned long long m, RngStream &rng);

/// Alice sends a spin up along `alice_axis` (her frame); Bob measures along
/// `bob_axis`. Outcome 0 has probability (1 + overlap) / 2.
int forward_spin(Session &session, const Direction &alice_axis, const Direction &bob_axis, RngStream &rng);

/// Classical bits carry protocol data only; this is pure accounting.
void send_cbits(Session &session, Link link, uint64_t count);

}  // namespace refalign

#endif
