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

#include "refalign/spinhalf.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "refalign/frames.h"
#include "refalign/rng.h"

namespace refalign {

namespace {
constexpr Complex I{0, 1};
}

ComplexMatrix2 ComplexMatrix2::pauli_x() {
    return {0, 1, 1, 0};
}
ComplexMatrix2 ComplexMatrix2::pauli_y() {
    return {0, -I, I, 0};
}
ComplexMatrix2 ComplexMatrix2::pauli_z() {
    return {1, 0, 0, -1};
}

ComplexMatrix2 ComplexMatrix2::pauli_along(const std::array<double, 3> &n) {
    return {n[2], Complex{n[0], -n[1]}, Complex{n[0], n[1]}, -n[2]};
}

ComplexMatrix2 ComplexMatrix2::rot_z(double angle) {
    return {std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2)};
}

ComplexMatrix2 ComplexMatrix2::rot_y(double angle) {
    double c = std::cos(angle / 2);
    double s = std::sin(angle / 2);
    return {c, -s, s, c};
}

ComplexMatrix2 ComplexMatrix2::operator*(const ComplexMatrix2 &o) const {
    return {
        a * o.a + b * o.c,
        a * o.b + b * o.d,
        c * o.a + d * o.c,
        c * o.b + d * o.d,
    };
}

ComplexMatrix2 ComplexMatrix2::operator*(Complex s) const {
    return {a * s, b * s, c * s, d * s};
}

ComplexMatrix2 ComplexMatrix2::operator+(const ComplexMatrix2 &o) const {
    return {a + o.a, b + o.b, c + o.c, d + o.d};
}

ComplexMatrix2 ComplexMatrix2::operator-(const ComplexMatrix2 &o) const {
    return {a - o.a, b - o.b, c - o.c, d - o.d};
}

ComplexMatrix2 ComplexMatrix2::adjoint() const {
    return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
}

Complex ComplexMatrix2::det() const {
    return a * d - b * c;
}

Complex ComplexMatrix2::trace() const {
    return a + d;
}

double ComplexMatrix2::max_abs_diff(const ComplexMatrix2 &o) const {
    return std::max({std::abs(a - o.a), std::abs(b - o.b), std::abs(c - o.c), std::abs(d - o.d)});
}

double ComplexMatrix2::unitarity_error() const {
    return (adjoint() * *this).max_abs_diff(identity());
}

double ComplexMatrix2::phase_insensitive_diff(const ComplexMatrix2 &o) const {
    // Best global phase aligning `o` to `this` is arg(tr(o^dagger this)).
    Complex t = (o.adjoint() * *this).trace();
    Complex phase = std::abs(t) > 0 ? t / std::abs(t) : Complex{1};
    return max_abs_diff(o * phase);
}

PureQubit PureQubit::along(const std::array<double, 3> &n) {
    double r = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    double nz = std::clamp(n[2] / r, -1.0, 1.0);
    double polar = std::acos(nz);
    double azimuth = std::atan2(n[1], n[0]);
    return {std::cos(polar / 2), std::polar(std::sin(polar / 2), azimuth)};
}

double PureQubit::norm() const {
    return std::sqrt(std::norm(up) + std::norm(down));
}

Complex PureQubit::inner(const PureQubit &o) const {
    return std::conj(up) * o.up + std::conj(down) * o.down;
}

PureQubit operator*(const ComplexMatrix2 &m, const PureQubit &q) {
    return {m.a * q.up + m.b * q.down, m.c * q.up + m.d * q.down};
}

ComplexMatrix2 euler_rotation(const EulerAngles &angles) {
    return ComplexMatrix2::rot_z(angles.psi) * ComplexMatrix2::rot_y(angles.theta) *
           ComplexMatrix2::rot_z(angles.phi);
}

ComplexMatrix2 alice_conjugate(const ComplexMatrix2 &op, const EulerAngles &angles) {
    ComplexMatrix2 r = euler_rotation(angles);
    return r.adjoint() * op * r;
}

ComplexMatrix2 u_generator(const EulerAngles &angles) {
    return u_power(angles, 1);
}

ComplexMatrix2 u_power(const EulerAngles &angles, unsigned long long m) {
    double mt = std::fmod(static_cast<double>(m) * angles.theta, 2 * M_PI);
    double c = std::cos(mt);
    double s = std::sin(mt);
    Complex e = std::polar(1.0, angles.phi);
    return {c, -e * s, std::conj(e) * s, c};
}

double survival_probability(const ComplexMatrix2 &u, const PureQubit &probe) {
    return std::norm(probe.inner(u * probe));
}

size_t measure(std::span<const double> probs, RngStream &rng) {
    if (probs.empty()) {
        throw std::invalid_argument("measure: empty probability vector");
    }
    double total = 0;
    for (double p : probs) {
        if (p < -1e-12) {
            throw std::invalid_argument("measure: negative probability " + std::to_string(p));
        }
        total += p;
    }
    if (std::abs(total - 1) > 1e-9) {
        throw std::invalid_argument("measure: probabilities sum to " + std::to_string(total));
    }
    double u = rng.next_uniform();
    double acc = 0;
    size_t last_nonzero = 0;
    for (size_t i = 0; i < probs.size(); i++) {
        if (probs[i] <= 0) {
            continue;
        }
        last_nonzero = i;
        acc += probs[i];
        if (u < acc) {
            return i;
        }
    }
    return last_nonzero;
}

}  // namespace refalign
