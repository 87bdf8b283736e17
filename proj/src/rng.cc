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

#include "refalign/rng.h"

#include <cmath>

namespace refalign {

namespace {
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kFnvOffset = 0xCBF29CE484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001B3ULL;
}  // namespace

uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

uint64_t stream_index(uint64_t trial, std::string_view label) {
    uint64_t h = kFnvOffset;
    for (unsigned char ch : label) {
        h ^= ch;
        h *= kFnvPrime;
    }
    return mix64(h ^ mix64(trial + kGolden));
}

RngStream::RngStream(uint64_t master_seed, uint64_t index)
    : seed_(master_seed), index_(index), key_(mix64(mix64(master_seed + kGolden) ^ (index * kGolden + 1))) {
}

uint64_t RngStream::next_u64() {
    uint64_t c = counter_++;
    return mix64(mix64(key_ + c * kGolden) ^ key_);
}

double RngStream::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_normal() {
    double u1 = next_uniform();
    double u2 = next_uniform();
    return std::sqrt(-2 * std::log1p(-u1)) * std::cos(2 * M_PI * u2);
}

RngStream RngStream::derive(std::string_view label) const {
    return derive(0, label);
}

RngStream RngStream::derive(uint64_t trial, std::string_view label) const {
    return RngStream(seed_, mix64(index_ ^ stream_index(trial, label)));
}

}  // namespace refalign
