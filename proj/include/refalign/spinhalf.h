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

#ifndef REFALIGN_SPINHALF_H
#define REFALIGN_SPINHALF_H

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace refalign {

using Complex = std::complex<double>;

struct EulerAngles;
class RngStream;

/// A 2x2 complex matrix stored row-major: [[a, b], [c, d]].
struct ComplexMatrix2 {
    Complex a{1}, b{0}, c{0}, d{1};

    static ComplexMatrix2 identity() {
        return {};
    }
    static ComplexMatrix2 pauli_x();
    static ComplexMatrix2 pauli_y();
    static ComplexMatrix2 pauli_z();
    /// n.sigma for a real 3-vector n.
    static ComplexMatrix2 pauli_along(const std::array<double, 3> &n);
    /// exp(-i angle sigma_z / 2).
    static ComplexMatrix2 rot_z(double angle);
    /// exp(-i angle sigma_y / 2).
    static ComplexMatrix2 rot_y(double angle);

    ComplexMatrix2 operator*(const ComplexMatrix2 &other) const;
    ComplexMatrix2 operator*(Complex scale) const;
    ComplexMatrix2 operator+(const ComplexMatrix2 &other) const;
    ComplexMatrix2 operator-(const ComplexMatrix2 &other) const;
    ComplexMatrix2 adjoint() const;
    Complex det() const;
    Complex trace() const;

    /// Largest absolute entry difference.
    double max_abs_diff(const ComplexMatrix2 &other) const;
    /// max |(M^dagger M - I)_ij|.
    double unitarity_error() const;
    /// max_abs_diff after removing the best-fitting global phase from `other`.
    double phase_insensitive_diff(const ComplexMatrix2 &other) const;
};

/// A normalized single-qubit pure state a|0> + b|1>.
struct PureQubit {
    Complex up{1};
    Complex down{0};

    static PureQubit z_plus() {
        return {1, 0};
    }
    static PureQubit z_minus() {
        return {0, 1};
    }
    /// Spin-up state along a unit direction (in the frame of whoever holds it).
    static PureQubit along(const std::array<double, 3> &n);

    double norm() const;
    Complex inner(const PureQubit &other) const;  // <this|other>
};

PureQubit operator*(const ComplexMatrix2 &m, const PureQubit &q);

/// SU(2) matrix R = e^{-i psi sigma_z/2} e^{-i theta sigma_y/2} e^{-i phi sigma_z/2}
/// taking Alice's frame to Bob's.
ComplexMatrix2 euler_rotation(const EulerAngles &angles);

/// R^dagger op R: an operator Alice applies in her frame, written in Bob's frame.
ComplexMatrix2 alice_conjugate(const ComplexMatrix2 &op, const EulerAngles &angles);

/// One round-trip generator U = sigma_z R^dagger sigma_z R, in closed form.
ComplexMatrix2 u_generator(const EulerAngles &angles);

/// U^m in closed form: diagonal cos(m theta), off-diagonals -+e^{+-i phi} sin(m theta).
ComplexMatrix2 u_power(const EulerAngles &angles, unsigned long long m);

/// |<probe| u |probe>|^2.
double survival_probability(const ComplexMatrix2 &u, const PureQubit &probe);

/// Samples an outcome index from a probability vector. Consumes exactly one draw.
/// Throws std::invalid_argument on negative entries (below -1e-12) or when the
/// entries do not sum to 1 within 1e-9.
size_t measure(std::span<const double> probs, RngStream &rng);

}  // namespace refalign

#endif
