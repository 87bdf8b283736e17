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

#ifndef REFALIGN_KERNELS_H
#define REFALIGN_KERNELS_H

#include <span>
#include <vector>

#include "refalign/spinhalf.h"

/// State-vector gate kernels. Every kernel has a plain serial loop and an
/// OpenMP loop; both touch each amplitude with the same arithmetic, so their
/// results are bitwise identical. Qubit q is bit q of the amplitude index.
namespace refalign::kernels {

enum class Exec {
    serial,
    parallel,
    automatic,  // parallel once the state is large enough to amortize the fork
};

/// Register size (in qubits) at which Exec::automatic switches to OpenMP.
inline constexpr unsigned kAutoParallelQubits = 14;

bool use_parallel(Exec exec, size_t amplitude_count);

void apply_1q(std::span<Complex> amps, unsigned target, const ComplexMatrix2 &m, Exec exec);
void apply_controlled_1q(std::span<Complex> amps, unsigned control, unsigned target, const ComplexMatrix2 &m, Exec exec);
/// Multiplies amplitudes with both bits set by e^{i angle}.
void apply_controlled_phase(std::span<Complex> amps, unsigned a, unsigned b, double angle, Exec exec);
void swap_qubits(std::span<Complex> amps, unsigned a, unsigned b, Exec exec);

/// Sum of |amp|^2. Partial sums are taken over fixed-size chunks and combined
/// in index order, so the value does not depend on the thread count.
double norm_squared(std::span<const Complex> amps, Exec exec);

/// Probability of each value of the `count`-qubit register starting at `first`.
std::vector<double> register_marginal(std::span<const Complex> amps, unsigned first, unsigned count, Exec exec);

}  // namespace refalign::kernels

#endif
