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

#include "refalign/kernels.h"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace refalign::kernels {

namespace {

constexpr size_t kReduceChunk = 4096;

// Inserts a zero bit at position `bit` of `i`.
inline size_t insert_zero(size_t i, unsigned bit) {
    size_t low = i & ((size_t{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | low;
}

// Inserts zero bits at positions lo < hi.
inline size_t insert_two_zeros(size_t i, unsigned lo, unsigned hi) {
    return insert_zero(insert_zero(i, lo), hi);
}

inline void mix_pair(Complex &x, Complex &y, const ComplexMatrix2 &m) {
    Complex a = x;
    Complex b = y;
    x = m.a * a + m.b * b;
    y = m.c * a + m.d * b;
}

}  // namespace

bool use_parallel(Exec exec, size_t amplitude_count) {
    switch (exec) {
        case Exec::serial:
            return false;
        case Exec::parallel:
            return true;
        case Exec::automatic:
            return amplitude_count >= (size_t{1} << kAutoParallelQubits);
    }
    return false;
}

void apply_1q(std::span<Complex> amps, unsigned target, const ComplexMatrix2 &m, Exec exec) {
    const size_t stride = size_t{1} << target;
    const size_t n = amps.size();
    if (!use_parallel(exec, n)) {
        for (size_t base = 0; base < n; base += 2 * stride) {
            for (size_t i = base; i < base + stride; i++) {
                mix_pair(amps[i], amps[i + stride], m);
            }
        }
        return;
    }
    const int64_t pairs = static_cast<int64_t>(n / 2);
#pragma omp parallel for schedule(static)
    for (int64_t p = 0; p < pairs; p++) {
        size_t i = insert_zero(static_cast<size_t>(p), target);
        mix_pair(amps[i], amps[i | stride], m);
    }
}

void apply_controlled_1q(std::span<Complex> amps, unsigned control, unsigned target, const ComplexMatrix2 &m, Exec exec) {
    const size_t cbit = size_t{1} << control;
    const size_t tbit = size_t{1} << target;
    const size_t n = amps.size();
    if (!use_parallel(exec, n)) {
        for (size_t i = 0; i < n; i++) {
            if ((i & cbit) && !(i & tbit)) {
                mix_pair(amps[i], amps[i | tbit], m);
            }
        }
        return;
    }
    unsigned lo = control < target ? control : target;
    unsigned hi = control < target ? target : control;
    const int64_t quads = static_cast<int64_t>(n / 4);
#pragma omp parallel for schedule(static)
    for (int64_t q = 0; q < quads; q++) {
        size_t i = insert_two_zeros(static_cast<size_t>(q), lo, hi) | cbit;
        mix_pair(amps[i], amps[i | tbit], m);
    }
}

void apply_controlled_phase(std::span<Complex> amps, unsigned a, unsigned b, double angle, Exec exec) {
    const size_t mask = (size_t{1} << a) | (size_t{1} << b);
    const Complex phase = std::polar(1.0, angle);
    const size_t n = amps.size();
    if (!use_parallel(exec, n)) {
        for (size_t i = 0; i < n; i++) {
            if ((i & mask) == mask) {
                amps[i] *= phase;
            }
        }
        return;
    }
    unsigned lo = a < b ? a : b;
    unsigned hi = a < b ? b : a;
    const int64_t quads = static_cast<int64_t>(n / 4);
#pragma omp parallel for schedule(static)
    for (int64_t q = 0; q < quads; q++) {
        amps[insert_two_zeros(static_cast<size_t>(q), lo, hi) | mask] *= phase;
    }
}

void swap_qubits(std::span<Complex> amps, unsigned a, unsigned b, Exec exec) {
    if (a == b) {
        return;
    }
    const size_t abit = size_t{1} << a;
    const size_t bbit = size_t{1} << b;
    const size_t n = amps.size();
    if (!use_parallel(exec, n)) {
        for (size_t i = 0; i < n; i++) {
            if ((i & abit) && !(i & bbit)) {
                std::swap(amps[i], amps[(i ^ abit) | bbit]);
            }
        }
        return;
    }
    unsigned lo = a < b ? a : b;
    unsigned hi = a < b ? b : a;
    const int64_t quads = static_cast<int64_t>(n / 4);
#pragma omp parallel for schedule(static)
    for (int64_t q = 0; q < quads; q++) {
        size_t base = insert_two_zeros(static_cast<size_t>(q), lo, hi);
        std::swap(amps[base | abit], amps[base | bbit]);
    }
}

double norm_squared(std::span<const Complex> amps, Exec exec) {
    const size_t n = amps.size();
    const size_t chunks = (n + kReduceChunk - 1) / kReduceChunk;
    std::vector<double> partial(chunks, 0.0);
    auto chunk_sum = [&](size_t c) {
        double s = 0;
        size_t end = std::min(n, (c + 1) * kReduceChunk);
        for (size_t i = c * kReduceChunk; i < end; i++) {
            s += std::norm(amps[i]);
        }
        partial[c] = s;
    };
    if (use_parallel(exec, n)) {
#pragma omp parallel for schedule(static)
        for (int64_t c = 0; c < static_cast<int64_t>(chunks); c++) {
            chunk_sum(static_cast<size_t>(c));
        }
    } else {
        for (size_t c = 0; c < chunks; c++) {
            chunk_sum(c);
        }
    }
    double total = 0;
    for (double s : partial) {
        total += s;
    }
    return total;
}

std::vector<double> register_marginal(std::span<const Complex> amps, unsigned first, unsigned count, Exec exec) {
    const size_t values = size_t{1} << count;
    const size_t n = amps.size();
    const size_t low_mask = (size_t{1} << first) - 1;
    const size_t rest = n / values;
    std::vector<double> out(values, 0.0);
    // Each register value owns its output slot and sums its "rest" amplitudes
    // in a fixed order, so the parallel result matches the serial one exactly.
    auto value_sum = [&](size_t y) {
        double s = 0;
        for (size_t r = 0; r < rest; r++) {
            size_t low = r & low_mask;
            size_t high = (r >> first) << (first + count);
            s += std::norm(amps[high | (y << first) | low]);
        }
        out[y] = s;
    };
    if (use_parallel(exec, n)) {
#pragma omp parallel for schedule(static)
        for (int64_t y = 0; y < static_cast<int64_t>(values); y++) {
            value_sum(static_cast<size_t>(y));
        }
    } else {
        for (size_t y = 0; y < values; y++) {
            value_sum(y);
        }
    }
    return out;
}

}  // namespace refalign::kernels
