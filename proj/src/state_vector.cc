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

#include "refalign/state_vector.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "refalign/rng.h"

namespace refalign {

MultiQubitState::MultiQubitState(unsigned qubits, kernels::Exec exec) : qubits_(qubits), exec_(exec) {
    if (qubits < 1 || qubits > kMaxQubits) {
        throw std::invalid_argument("MultiQubitState: qubit count must be in [1, 24], got " + std::to_string(qubits));
    }
    amps_.assign(size_t{1} << qubits, Complex{0});
    amps_[0] = 1;
}

MultiQubitState MultiQubitState::from_amplitudes(std::vector<Complex> amplitudes, kernels::Exec exec) {
    size_t n = amplitudes.size();
    if (n < 2 || (n & (n - 1)) != 0 || n > (size_t{1} << kMaxQubits)) {
        throw std::invalid_argument("MultiQubitState: amplitude count must be a power of two in [2, 2^24]");
    }
    MultiQubitState s;
    s.qubits_ = static_cast<unsigned>(std::countr_zero(n));
    s.amps_ = std::move(amplitudes);
    s.exec_ = exec;
    if (std::abs(s.norm() - 1) > 1e-9) {
        throw std::invalid_argument("MultiQubitState: amplitudes are not normalized");
    }
    return s;
}

void MultiQubitState::check_qubit(unsigned q) const {
    if (q >= qubits_) {
        throw std::out_of_range("MultiQubitState: qubit " + std::to_string(q) + " out of range");
    }
}

void MultiQubitState::apply(unsigned target, const ComplexMatrix2 &m) {
    check_qubit(target);
    kernels::apply_1q(amps_, target, m, exec_);
}

void MultiQubitState::apply_controlled(unsigned control, unsigned target, const ComplexMatrix2 &m) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw std::invalid_argument("MultiQubitState: control equals target");
    }
    kernels::apply_controlled_1q(amps_, control, target, m, exec_);
}

void MultiQubitState::apply_controlled_phase(unsigned a, unsigned b, double angle) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) {
        throw std::invalid_argument("MultiQubitState: controlled phase needs two distinct qubits");
    }
    kernels::apply_controlled_phase(amps_, a, b, angle, exec_);
}

void MultiQubitState::swap(unsigned a, unsigned b) {
    check_qubit(a);
    check_qubit(b);
    kernels::swap_qubits(amps_, a, b, exec_);
}

void MultiQubitState::hadamard(unsigned target) {
    const double r = 1 / std::sqrt(2.0);
    apply(target, {r, r, r, -r});
}

void MultiQubitState::cnot(unsigned control, unsigned target) {
    apply_controlled(control, target, ComplexMatrix2::pauli_x());
}

void MultiQubitState::qft(unsigned first, unsigned count) {
    check_qubit(first + count - 1);
    for (unsigned j = count; j-- > 0;) {
        hadamard(first + j);
        for (unsigned l = j; l-- > 0;) {
            apply_controlled_phase(first + l, first + j, M_PI / static_cast<double>(1ULL << (j - l)));
        }
    }
    for (unsigned j = 0; j < count / 2; j++) {
        swap(first + j, first + count - 1 - j);
    }
}

void MultiQubitState::inverse_qft(unsigned first, unsigned count) {
    check_qubit(first + count - 1);
    for (unsigned j = 0; j < count / 2; j++) {
        swap(first + j, first + count - 1 - j);
    }
    for (unsigned j = 0; j < count; j++) {
        for (unsigned l = 0; l < j; l++) {
            apply_controlled_phase(first + l, first + j, -M_PI / static_cast<double>(1ULL << (j - l)));
        }
        hadamard(first + j);
    }
}

double MultiQubitState::norm() const {
    return std::sqrt(kernels::norm_squared(amps_, exec_));
}

Complex MultiQubitState::inner(const MultiQubitState &other) const {
    if (other.amps_.size() != amps_.size()) {
        throw std::invalid_argument("MultiQubitState: size mismatch in inner product");
    }
    Complex s{0};
    for (size_t i = 0; i < amps_.size(); i++) {
        s += std::conj(amps_[i]) * other.amps_[i];
    }
    return s;
}

std::vector<double> MultiQubitState::marginal(unsigned first, unsigned count) const {
    check_qubit(first + count - 1);
    return kernels::register_marginal(amps_, first, count, exec_);
}

double MultiQubitState::probability_one(unsigned target) const {
    return marginal(target, 1)[1];
}

void MultiQubitState::project(unsigned target, int outcome) {
    check_qubit(target);
    const size_t bit = size_t{1} << target;
    double keep = 0;
    for (size_t i = 0; i < amps_.size(); i++) {
        bool set = (i & bit) != 0;
        if (set == (outcome == 1)) {
            keep += std::norm(amps_[i]);
        } else {
            amps_[i] = 0;
        }
    }
    if (keep <= 0) {
        throw std::domain_error("MultiQubitState: projected onto a zero-probability outcome");
    }
    const double scale = 1 / std::sqrt(keep);
    for (auto &a : amps_) {
        a *= scale;
    }
}

int MultiQubitState::measure_qubit(unsigned target, RngStream &rng) {
    double p1 = std::clamp(probability_one(target), 0.0, 1.0);
    std::array<double, 2> probs{1 - p1, p1};
    int outcome = static_cast<int>(refalign::measure(probs, rng));
    project(target, outcome);
    return outcome;
}

int MultiQubitState::measure_along(unsigned target, const std::array<double, 3> &n, RngStream &rng) {
    ComplexMatrix2 w = basis_to_z(n);
    apply(target, w);
    int outcome = measure_qubit(target, rng);
    apply(target, w.adjoint());
    return outcome;
}

ComplexMatrix2 MultiQubitState::reduced_density(unsigned target) const {
    check_qubit(target);
    const size_t bit = size_t{1} << target;
    Complex r00{0}, r01{0}, r11{0};
    for (size_t i = 0; i < amps_.size(); i++) {
        if (i & bit) {
            continue;
        }
        Complex a0 = amps_[i];
        Complex a1 = amps_[i | bit];
        r00 += std::norm(a0);
        r11 += std::norm(a1);
        r01 += a0 * std::conj(a1);
    }
    return {r00, r01, std::conj(r01), r11};
}

ComplexMatrix2 basis_to_z(const std::array<double, 3> &n) {
    PureQubit up = PureQubit::along(n);
    // Rows are <n+| and <n-| with |n-> = (-conj(b), conj(a)).
    return {std::conj(up.up), std::conj(up.down), -up.down, up.up};
}

}  // namespace refalign
