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

#ifndef REFALIGN_STATE_VECTOR_H
#define REFALIGN_STATE_VECTOR_H

#include <span>
#include <vector>

#include "refalign/kernels.h"
#include "refalign/spinhalf.h"

namespace refalign {

class RngStream;

/// Pure state of 1..24 qubits. Qubit q is bit q of the amplitude index.
class MultiQubitState {
   public:
    static constexpr unsigned kMaxQubits = 24;

    /// |0...0>.
    explicit MultiQubitState(unsigned qubits, kernels::Exec exec = kernels::Exec::automatic);
    /// Takes ownership of a normalized amplitude vector whose size is a power of two.
    static MultiQubitState from_amplitudes(std::vector<Complex> amplitudes, kernels::Exec exec = kernels::Exec::automatic);

    unsigned qubits() const {
        return qubits_;
    }
    std::span<const Complex> amplitudes() const {
        return amps_;
    }
    Complex amplitude(size_t index) const {
        return amps_[index];
    }
    kernels::Exec exec() const {
        return exec_;
    }

    void apply(unsigned target, const ComplexMatrix2 &m);
    void apply_controlled(unsigned control, unsigned target, const ComplexMatrix2 &m);
    void apply_controlled_phase(unsigned a, unsigned b, double angle);
    void swap(unsigned a, unsigned b);
    void hadamard(unsigned target);
    void cnot(unsigned control, unsigned target);

    /// Fourier transform |y> -> 2^{-n/2} sum_z e^{+2 pi i y z / 2^n} |z> on the
    /// `count` qubits starting at `first` (bit `first` least significant).
    void qft(unsigned first, unsigned count);
    void inverse_qft(unsigned first, unsigned count);

    double norm() const;
    Complex inner(const MultiQubitState &other) const;  // <this|other>

    /// Probabilities of each value of a contiguous sub-register.
    std::vector<double> marginal(unsigned first, unsigned count) const;
    double probability_one(unsigned target) const;
    /// Projects `target` onto |outcome> and renormalizes. Throws when the
    /// outcome has zero probability.
    void project(unsigned target, int outcome);
    /// Computational-basis measurement of one qubit; one RNG draw.
    int measure_qubit(unsigned target, RngStream &rng);
    /// Measures `target` along the Bloch direction n; outcome 0 means spin up
    /// along n. The qubit is left in the corresponding eigenstate.
    int measure_along(unsigned target, const std::array<double, 3> &n, RngStream &rng);

    /// Reduced single-qubit density matrix.
    ComplexMatrix2 reduced_density(unsigned target) const;

   private:
    MultiQubitState() = default;
    void check_qubit(unsigned q) const;

    unsigned qubits_ = 0;
    std::vector<Complex> amps_;
    kernels::Exec exec_ = kernels::Exec::automatic;
};

/// Basis change W with W|n+> = |0>, W|n-> = |1>.
ComplexMatrix2 basis_to_z(const std::array<double, 3> &n);

}  // namespace refalign

#endif
