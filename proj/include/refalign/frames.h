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

#ifndef REFALIGN_FRAMES_H
#define REFALIGN_FRAMES_H

#include <array>
#include <cstdint>
#include <vector>

namespace refalign {

struct ComplexMatrix2;
class RngStream;

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;  // row-major

double dot(const Vec3 &a, const Vec3 &b);
Vec3 cross(const Vec3 &a, const Vec3 &b);
double norm(const Vec3 &a);

/// ZYZ Euler angles relating Alice's frame to Bob's.
/// Canonical ranges: phi, psi in [0, 2pi), theta in [0, pi].
struct EulerAngles {
    double phi = 0;
    double theta = 0;
    double psi = 0;

    EulerAngles() = default;
    /// Validates ranges. Throws std::invalid_argument on NaN or out-of-range input.
    EulerAngles(double phi, double theta, double psi);

    /// Wraps phi and psi into [0, 2pi); theta must already lie in [0, pi].
    static EulerAngles canonical(double phi, double theta, double psi);

    bool operator==(const EulerAngles &) const = default;
};

/// Unit 3-vector.
class Direction {
   public:
    /// Normalizes `v`. Throws std::invalid_argument on a zero or non-finite vector.
    explicit Direction(const Vec3 &v);
    static Direction x() {
        return Direction(Vec3{1, 0, 0});
    }
    static Direction y() {
        return Direction(Vec3{0, 1, 0});
    }
    static Direction z() {
        return Direction(Vec3{0, 0, 1});
    }

    const Vec3 &vec() const {
        return v_;
    }
    double operator[](size_t i) const {
        return v_[i];
    }
    Direction operator-() const {
        return Direction(Vec3{-v_[0], -v_[1], -v_[2]});
    }
    bool operator==(const Direction &) const = default;

   private:
    Vec3 v_;
};

/// T = theta / pi in [0, 1], with access to its binary digits T = 0.t1 t2 t3 ...
class FractionT {
   public:
    explicit FractionT(double value);
    double value() const {
        return value_;
    }
    double theta() const;
    /// First k binary digits t1..tk (T = 1 yields all ones).
    std::vector<int> bits(int k) const;
    /// T - 0.t1..tk, in [0, 2^-k].
    double remainder(int k) const;

   private:
    double value_;
};

FractionT t_from_theta(double theta);

/// An estimate of a value with its nominal contract: |value - truth| < half_width
/// with probability at least 1 - epsilon.
struct IntervalEstimate {
    double center = 0;
    double half_width = 0;
    int k = 0;
    double epsilon = 0;

    static IntervalEstimate k_bit(double center, int k, double epsilon);
};

/// A Bob-frame axis and an Alice-frame axis used by the generalized round trip.
struct AxisPair {
    Direction bob_axis = Direction::z();
    Direction alice_axis = Direction::z();

    static AxisPair zz() {
        return {};
    }
    bool is_zz() const;
};

/// SO(3) matrix M of R, defined by R sigma_j R^dagger = sum_i M_ij sigma_i.
Mat3 so3_of(const ComplexMatrix2 &r);
Mat3 so3_of(const EulerAngles &angles);
Mat3 transpose(const Mat3 &m);
Vec3 mat_vec(const Mat3 &m, const Vec3 &v);

/// Alice's axis `alice_axis` expressed in Bob's frame, i.e. M^{-1} b.
Direction alice_axis_in_bob_frame(const EulerAngles &angles, const Direction &alice_axis);

/// bob_axis . (M^{-1} alice_axis).
double overlap(const AxisPair &pair, const EulerAngles &angles);

/// Recovers canonical Euler angles from Alice's z and x axes seen in Bob's frame
/// (the third and first columns of M^{-1}). Throws DegenerateInput when
/// |col_z . col_x| > 0.2.
EulerAngles euler_from_columns(const Direction &col_z, const Direction &col_x);

/// 1/2 (1 + n_a . n_e).
double fidelity(const Direction &n_a, const Direction &n_e);

/// Angle between two directions, in [0, pi].
double angle_between(const Direction &a, const Direction &b);

/// Smallest absolute difference between two angles on the circle.
double circular_angle_distance(double a, double b);

/// Haar-uniform frame: phi, psi uniform and cos theta uniform. Three draws.
EulerAngles random_frame(RngStream &rng);
/// Uniform point on the unit sphere. Two draws.
Direction random_direction(RngStream &rng);

}  // namespace refalign

#endif
