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

#ifndef REFALIGN_TESTS_ORACLE_H
#define REFALIGN_TESTS_ORACLE_H

// Independent reference math for tests. Shares no code with the library.

#include <array>
#include <cmath>
#include <complex>
#include <random>

namespace oracle {

using C = std::complex<double>;
using M2 = std::array<C, 4>;  // row-major

inline M2 mul(const M2 &x, const M2 &y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
}

inline M2 dagger(const M2 &x) {
    return {std::conj(x[0]), std::conj(x[2]), std::conj(x[1]), std::conj(x[3])};
}

inline M2 sz() {
    return {1, 0, 0, -1};
}

/// exp(-i a sigma_z / 2) and exp(-i a sigma_y / 2) from the power series
/// identity exp(-i a n.sigma / 2) = cos(a/2) I - i sin(a/2) n.sigma.
inline M2 ez(double a) {
    C i{0, 1};
    return {std::cos(a / 2) - i * std::sin(a / 2), 0, 0, std::cos(a / 2) + i * std::sin(a / 2)};
}
inline M2 ey(double a) {
    return {std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2)};
}

/// R = e^{-i psi sz/2} e^{-i theta sy/2} e^{-i phi sz/2}.
inline M2 rotation(double phi, double theta, double psi) {
    return mul(ez(psi), mul(ey(theta), ez(phi)));
}

/// sz R^dagger sz R.
inline M2 generator(double phi, double theta, double psi) {
    M2 r = rotation(phi, theta, psi);
    return mul(sz(), mul(dagger(r), mul(sz(), r)));
}

inline double max_diff(const M2 &x, const M2 &y) {
    double m = 0;
    for (int i = 0; i < 4; i++) {
        m = std::max(m, std::abs(x[i] - y[i]));
    }
    return m;
}

/// M_ij = 1/2 tr(sigma_i R sigma_j R^dagger).
inline std::array<std::array<double, 3>, 3> so3(const M2 &r) {
    const C i{0, 1};
    const std::array<M2, 3> s{M2{0, 1, 1, 0}, M2{0, -i, i, 0}, M2{1, 0, 0, -1}};
    std::array<std::array<double, 3>, 3> m{};
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            M2 p = mul(s[a], mul(r, mul(s[b], dagger(r))));
            m[a][b] = 0.5 * (p[0] + p[3]).real();
        }
    }
    return m;
}

struct Angles {
    double phi, theta, psi;
};

inline Angles random_angles(std::mt19937_64 &g, double theta_lo = 0, double theta_hi = M_PI) {
    std::uniform_real_distribution<double> u(0, 1);
    return {2 * M_PI * u(g) * 0.999999, theta_lo + (theta_hi - theta_lo) * u(g), 2 * M_PI * u(g) * 0.999999};
}

/// Survival cos^2(m theta) of |z+> under m round trips.
inline double survival(double theta, double m) {
    double c = std::cos(m * theta);
    return c * c;
}

/// Folded distance of an estimate from T: min(|x - T|, |x - (1 - T)|).
inline double folded_error(double x, double t) {
    return std::min(std::abs(x - t), std::abs(x - (1 - t)));
}

}  // namespace oracle

#endif
