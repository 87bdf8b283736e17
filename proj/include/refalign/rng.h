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

#ifndef REFALIGN_RNG_H
#define REFALIGN_RNG_H

#include <cstdint>
#include <string_view>

namespace refalign {

/// SplitMix64 finalizer.
uint64_t mix64(uint64_t x);

/// Stable 64-bit hash of a (trial index, stage label) pair. Does not depend on
/// the platform, the compiler, or the process.
uint64_t stream_index(uint64_t trial, std::string_view label);

/// Counter-based random stream. Draw i of stream (seed, index) is a pure
/// function of (seed, index, i), so streams can be created anywhere and used
/// from any worker without coordination.
class RngStream {
   public:
    RngStream(uint64_t master_seed, uint64_t index);

    uint64_t next_u64();
    /// Uniform in [0, 1) with 53 random bits.
    double next_uniform();
    /// Standard normal via Box-Muller (consumes two draws).
    double next_normal();

    /// Independent child stream keyed by this stream's identity and `label`.
    RngStream derive(std::string_view label) const;
    RngStream derive(uint64_t trial, std::string_view label) const;

    uint64_t seed() const {
        return seed_;
    }
    uint64_t index() const {
        return index_;
    }
    uint64_t draws() const {
        return counter_;
    }

   private:
    uint64_t seed_;
    uint64_t index_;
    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace refalign

#endif
