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

#include "refalign/frames.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "refalign/errors.h"
#include "refalign/rng.h"
#include "refalign/spinhalf.h"

namespace refalign {

namespace {

constexpr double kTwoPi = 2 * M_PI;

double wrap_2pi(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0) {
        w += kTwoPi;
    }
    // fmod of a tiny negative number can land exactly on 2pi after the shift.
    if (w >= kTwoPi) {
        w = 0;
    }
    return w;
}

}  // namespace

double dot(const Vec3 &a, const Vec3 &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3 &a) {
    return std::sqrt(dot(a, a));
}

EulerAngles::EulerAngles(double phi, double theta, double psi) : phi(phi), theta(theta), psi(psi) {
    if (std::isnan(phi) || std::isnan(theta) || std::isnan(psi)) {
        throw std::invalid_argument("EulerAngles: NaN angle");
    }
    if (!(phi >= 0 && phi < kTwoPi) || !(psi >= 0 && psi < kTwoPi)) {
        throw std::invalid_argument("EulerAngles: phi and psi must lie in [0, 2pi)");
    }
    if (!(theta >= 0 && theta <= M_PI)) {
        throw std::invalid_argument("EulerAngles: theta must lie in [0, pi], got " + std::to_string(theta));
    }
}

EulerAngles EulerAngles::canonical(double phi, double theta, double psi) {
    if (std::isnan(phi) || std::isnan(psi) || std::isinf(phi) || std::isinf(psi)) {
        throw std::invalid_argument("EulerAngles: non-finite angle");
    }
    return EulerAngles(wrap_2pi(phi), theta, wrap_2pi(psi));
}

Direction::Direction(const Vec3 &v) {
    double n = norm(v);
    if (!(n > 0) || !std::isfinite(n)) {
        throw std::invalid_argument("Direction: zero or non-finite vector");
    }
    v_ = {v[0] / n, v[1] / n, v[2] / n};
}

FractionT::FractionT(double value) : value_(value) {
    if (!(value >= 0 && value <= 1)) {
        throw std::invalid_argument("FractionT: value must lie in [0, 1]");
    }
}

double FractionT::theta() const {
    return M_PI * value_;
}

std::vector<int> FractionT::bits(int k) const {
    std::vector<int> out;
    out.reserve(k);
    double v = value_;
    for (int i = 0; i < k; i++) {
        v *= 2;
        int t = v >= 1 ? 1 : 0;
        v -= t;
        out.push_back(t);
    }
    return out;
}

double FractionT::remainder(int k) const {
    double v = value_;
    for (int i = 0; i < k; i++) {
        v *= 2;
        if (v >= 1) {
            v -= 1;
        }
    }
    return std::ldexp(v, -k);
}

FractionT t_from_theta(double theta) {
    if (!(theta >= 0 && theta <= M_PI)) {
        throw std::invalid_argument("t_from_theta: theta must lie in [0, pi]");
    }
    return FractionT(std::min(1.0, theta / M_PI));
}

IntervalEstimate IntervalEstimate::k_bit(double center, int k, double epsilon) {
    return {center, std::ldexp(1.0, -(k + 1)), k, epsilon};
}

bool AxisPair::is_zz() const {
    return bob_axis == Direction::z() && alice_axis == Direction::z();
}

Mat3 so3_of(const ComplexMatrix2 &r) {
    const ComplexMatrix2 paulis[3] = {ComplexMatrix2::pauli_x(), ComplexMatrix2::pauli_y(), ComplexMatrix2::pauli_z()};
    ComplexMatrix2 rd = r.adjoint();
    Mat3 m{};
    for (int j = 0; j < 3; j++) {
        ComplexMatrix2 rotated = r * paulis[j] * rd;
        for (int i = 0; i < 3; i++) {
            m[i][j] = 0.5 * (paulis[i] * rotated).trace().real();
        }
    }
    return m;
}

Mat3 so3_of(const EulerAngles &angles) {
    return so3_of(euler_rotation(angles));
}

Mat3 transpose(const Mat3 &m) {
    Mat3 t{};
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            t[i][j] = m[j][i];
        }
    }
    return t;
}

Vec3 mat_vec(const Mat3 &m, const Vec3 &v) {
    return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

Direction alice_axis_in_bob_frame(const EulerAngles &angles, const Direction &alice_axis) {
    return Direction(mat_vec(transpose(so3_of(angles)), alice_axis.vec()));
}

double overlap(const AxisPair &pair, const EulerAngles &angles) {
    double o = dot(pair.bob_axis.vec(), alice_axis_in_bob_frame(angles, pair.alice_axis).vec());
    return std::clamp(o, -1.0, 1.0);
}

EulerAngles euler_from_columns(const Direction &col_z, const Direction &col_x) {
    const Vec3 &z = col_z.vec();
    double zx = dot(z, col_x.vec());
    if (std::abs(zx) > 0.2) {
        throw DegenerateInput("euler_from_columns: axes nearly parallel (|z.x| = " + std::to_string(std::abs(zx)) + ")");
    }
    Vec3 xr = col_x.vec();
    for (int i = 0; i < 3; i++) {
        xr[i] -= zx * z[i];
    }
    Vec3 x = Direction(xr).vec();
    Vec3 y = cross(z, x);

    // Q = M^{-1} has columns (x, y, z); Q = Rz(-phi) Ry(-theta) Rz(-psi).
    double cos_theta = std::clamp(z[2], -1.0, 1.0);
    if (cos_theta >= 1 - 1e-9) {
        return EulerAngles::canonical(std::atan2(-x[1], x[0]), 0, 0);
    }
    if (cos_theta <= -1 + 1e-9) {
        return EulerAngles::canonical(std::atan2(x[1], -x[0]), M_PI, 0);
    }
    double theta = std::atan2(std::hypot(z[0], z[1]), z[2]);
    double phi = std::atan2(z[1], -z[0]);
    double psi = std::atan2(y[2], x[2]);
    return EulerAngles::canonical(phi, theta, psi);
}

double fidelity(const Direction &n_a, const Direction &n_e) {
    return std::clamp(0.5 * (1 + dot(n_a.vec(), n_e.vec())), 0.0, 1.0);
}

double angle_between(const Direction &a, const Direction &b) {
    // atan2 form stays accurate for nearly parallel vectors.
    return std::atan2(norm(cross(a.vec(), b.vec())), dot(a.vec(), b.vec()));
}

double circular_angle_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

EulerAngles random_frame(RngStream &rng) {
    double phi = 2 * M_PI * rng.next_uniform();
    double theta = std::acos(std::clamp(1 - 2 * rng.next_uniform(), -1.0, 1.0));
    double psi = 2 * M_PI * rng.next_uniform();
    return EulerAngles::canonical(phi, theta, psi);
}

Direction random_direction(RngStream &rng) {
    double z = 1 - 2 * rng.next_uniform();
    double a = 2 * M_PI * rng.next_uniform();
    double r = std::sqrt(std::max(0.0, 1 - z * z));
    return Direction(Vec3{r * std::cos(a), r * std::sin(a), z});
}

}  // namespace refalign
