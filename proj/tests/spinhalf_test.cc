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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracle.h"
#include "refalign/frames.h"
#include "refalign/rng.h"

using namespace refalign;

namespace {

oracle::M2 as_oracle(const ComplexMatrix2 &m) {
    return {m.a, m.b, m.c, m.d};
}

EulerAngles from(const oracle::Angles &a) {
    return EulerAngles(a.phi, a.theta, a.psi);
}

}  // namespace

TEST(euler_rotation, spec_examples) {
    EXPECT_LT(euler_rotation(EulerAngles(0, 0, 0)).max_abs_diff(ComplexMatrix2::identity()), 1e-15);
    EXPECT_LT(euler_rotation(EulerAngles(0, M_PI, 0)).max_abs_diff({0, -1, 1, 0}), 1e-15);
    const Complex i{0, 1};
    ComplexMatrix2 expect{std::exp(-i * M_PI / 2.0), 0, 0, std::exp(i * M_PI / 2.0)};
    EXPECT_LT(euler_rotation(EulerAngles(M_PI / 2, 0, M_PI / 2)).max_abs_diff(expect), 1e-15);
}

TEST(euler_rotation, matches_operator_product_and_is_special_unitary) {
    std::mt19937_64 g(1);
    for (int n = 0; n < 1000; n++) {
        auto a = oracle::random_angles(g);
        ComplexMatrix2 r = euler_rotation(from(a));
        EXPECT_LT(oracle::max_diff(as_oracle(r), oracle::rotation(a.phi, a.theta, a.psi)), 1e-14);
        EXPECT_LT(std::abs(r.det() - Complex{1}), 1e-12);
        EXPECT_LT(r.unitarity_error(), 1e-12);
    }
}

TEST(alice_conjugate, spec_examples) {
    EXPECT_LT(alice_conjugate(ComplexMatrix2::pauli_z(), EulerAngles(0, 0, 0)).max_abs_diff(ComplexMatrix2::pauli_z()),
              1e-15);
    EXPECT_LT(alice_conjugate(ComplexMatrix2::identity(), EulerAngles(1, 2, 3)).max_abs_diff(ComplexMatrix2::identity()),
              1e-15);
    std::mt19937_64 g(2);
    for (int n = 0; n < 200; n++) {
        auto a = oracle::random_angles(g);
        ComplexMatrix2 m = alice_conjugate(ComplexMatrix2::pauli_z(), from(a));
        EXPECT_LT(m.max_abs_diff(m.adjoint()), 1e-12);
        EXPECT_LT(std::abs(m.trace()), 1e-12);
        EXPECT_LT(m.unitarity_error(), 1e-12);
        EXPECT_NEAR(m.a.real(), std::cos(a.theta), 1e-12);
        EXPECT_NEAR(m.a.imag(), 0, 1e-12);
    }
}

TEST(u_generator, spec_examples) {
    EXPECT_LT(u_generator(EulerAngles(1.3, 0, 4.1)).max_abs_diff(ComplexMatrix2::identity()), 1e-15);
    EXPECT_LT(u_generator(EulerAngles(0, M_PI / 2, 2.0)).max_abs_diff({0, -1, 1, 0}), 1e-15);
}

TEST(u_generator, equals_sigma_z_times_conjugated_sigma_z) {
    std::mt19937_64 g(3);
    for (int n = 0; n < 1000; n++) {
        auto a = oracle::random_angles(g);
        ComplexMatrix2 u = u_generator(from(a));
        ComplexMatrix2 direct = ComplexMatrix2::pauli_z() * alice_conjugate(ComplexMatrix2::pauli_z(), from(a));
        EXPECT_LT(u.max_abs_diff(direct), 1e-12);
        EXPECT_LT(oracle::max_diff(as_oracle(u), oracle::generator(a.phi, a.theta, a.psi)), 1e-12);
        EXPECT_NEAR(u.trace().real(), 2 * std::cos(a.theta), 1e-12);
    }
}

TEST(u_power, spec_examples) {
    EXPECT_LT(u_power(EulerAngles(0.4, 0, 0.2), 12345).max_abs_diff(ComplexMatrix2::identity()), 1e-12);
    const double phi = 0.9;
    const Complex i{0, 1};
    ComplexMatrix2 expect{0, -std::exp(i * phi), std::exp(-i * phi), 0};
    EXPECT_LT(u_power(EulerAngles(phi, M_PI / 8, 1.0), 4).max_abs_diff(expect), 1e-12);
}

TEST(u_power, equals_iterated_product) {
    std::mt19937_64 g(4);
    for (int n = 0; n < 20; n++) {
        auto a = oracle::random_angles(g);
        oracle::M2 step = oracle::generator(a.phi, a.theta, a.psi);
        oracle::M2 acc{1, 0, 0, 1};
        unsigned long long next = 1;
        for (unsigned long long m = 1; m <= 4096; m++) {
            acc = oracle::mul(step, acc);
            if (m == next) {
                EXPECT_LT(oracle::max_diff(as_oracle(u_power(from(a), m)), acc), 1e-9) << "m=" << m;
                next *= 2;
            }
        }
    }
}

TEST(survival_probability, spec_examples) {
    PureQubit up = PureQubit::z_plus();
    EXPECT_DOUBLE_EQ(survival_probability(ComplexMatrix2::identity(), PureQubit::along({0.6, 0, 0.8})), 1.0);
    EXPECT_NEAR(survival_probability(u_power(EulerAngles(0, M_PI / 4, 0), 2), up), 0, 1e-15);
    std::mt19937_64 g(5);
    for (int n = 0; n < 500; n++) {
        auto a = oracle::random_angles(g);
        unsigned long long m = 1 + g() % 100;
        double p = survival_probability(u_power(from(a), m), up);
        EXPECT_NEAR(p, 0.5 * (1 + std::cos(2.0 * m * a.theta)), 1e-12);
        EXPECT_NEAR(p, oracle::survival(a.theta, static_cast<double>(m)), 1e-12);
    }
}

TEST(survival_probability, mirror_identity) {
    std::mt19937_64 g(6);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int n = 0; n < 500; n++) {
        auto a = oracle::random_angles(g);
        PureQubit probe = PureQubit::along({u(g), u(g), u(g) + 2});
        unsigned long long m = 1 + g() % 1000;
        double p = survival_probability(u_power(from(a), m), probe);
        double q = survival_probability(u_power(EulerAngles(a.phi, M_PI - a.theta, a.psi), m), probe);
        EXPECT_NEAR(p, q, 1e-12);
    }
}

TEST(measure, spec_examples) {
    RngStream rng(1, 2);
    std::vector<double> zero_one{0, 1}, one_zero{1, 0};
    for (int i = 0; i < 1000; i++) {
        EXPECT_EQ(measure(one_zero, rng), 0u);
        EXPECT_EQ(measure(zero_one, rng), 1u);
    }
    std::vector<double> half{0.5, 0.5};
    RngStream r2(9, 9);
    int zeros = 0;
    const int n = 1000000;
    for (int i = 0; i < n; i++) {
        zeros += measure(half, r2) == 0 ? 1 : 0;
    }
    EXPECT_NEAR(zeros / double(n), 0.5, 0.002);
}

TEST(measure, consumes_one_draw_and_validates) {
    RngStream rng(1, 2);
    std::vector<double> p{0.2, 0.3, 0.5};
    measure(p, rng);
    EXPECT_EQ(rng.draws(), 1u);
    std::vector<double> neg{-0.1, 1.1};
    EXPECT_THROW(measure(neg, rng), std::invalid_argument);
    std::vector<double> off{0.5, 0.4};
    EXPECT_THROW(measure(off, rng), std::invalid_argument);
}

TEST(pure_qubit, along_gives_spin_up_along_direction) {
    std::mt19937_64 g(7);
    std::normal_distribution<double> n01;
    for (int n = 0; n < 200; n++) {
        std::array<double, 3> v{n01(g), n01(g), n01(g)};
        double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        for (double &x : v) {
            x /= len;
        }
        PureQubit q = PureQubit::along(v);
        EXPECT_NEAR(q.norm(), 1, 1e-12);
        PureQubit image = ComplexMatrix2::pauli_along(v) * q;
        EXPECT_NEAR(std::abs(q.inner(image) - Complex{1}), 0, 1e-12);
    }
}
