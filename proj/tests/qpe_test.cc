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

#include "refalign/qpe.h"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "refalign/parallel.h"
#include "refalign/rng.h"

using namespace refalign;

namespace {

/// Textbook phase-estimation outcome law for eigenphases +-T/2 (in turns) with
/// weight 1/2 each: P(y) = sum over branches of 1/2 |2^-x sum_j e^{2 pi i j (phase - y / 2^x)}|^2.
std::vector<double> oracle_distribution(double t, int x) {
    const size_t dim = size_t{1} << x;
    std::vector<double> out(dim, 0);
    for (size_t y = 0; y < dim; y++) {
        for (double phase : {t / 2, -t / 2}) {
            std::complex<double> s = 0;
            for (size_t j = 0; j < dim; j++) {
                s += std::polar(1.0, 2 * M_PI * double(j) * (phase - double(y) / double(dim)));
            }
            out[y] += 0.5 * std::norm(s / double(dim));
        }
    }
    return out;
}

EulerAngles frame_with_t(double t) {
    return EulerAngles(0.7, M_PI * t, 1.9);
}

}  // namespace

TEST(register_size, spec_examples) {
    EXPECT_EQ(register_size(4, 0.25), 6);
    EXPECT_EQ(register_size(1, 0.5), 3);
    for (double eps : {0.5, 0.25, 0.1, 0.01}) {
        for (int k = 1; k < 12; k++) {
            EXPECT_EQ(register_size(k + 1, eps), register_size(k, eps) + 1);
            int extra = static_cast<int>(std::ceil(std::log2(2 + 1 / (2 * eps)) - 1e-12));
            EXPECT_EQ(register_size(k, eps), k + extra);
        }
    }
    EXPECT_THROW(register_size(0, 0.1), std::invalid_argument);
    EXPECT_THROW(register_size(3, 0), std::invalid_argument);
    EXPECT_THROW(register_size(3, 1), std::invalid_argument);
}

TEST(qpe_t_from_outcome, folds_eigenvalue_pair) {
    EXPECT_EQ(qpe_t_from_outcome(0, 4), 0);
    EXPECT_EQ(qpe_t_from_outcome(3, 4), 0.375);
    EXPECT_EQ(qpe_t_from_outcome(13, 4), 0.375);
    EXPECT_EQ(qpe_t_from_outcome(8, 4), 1);
}

TEST(qpe_distribution, dyadic_two_point) {
    auto d = qpe_distribution(frame_with_t(0.375), 4);
    ASSERT_EQ(d.size(), 16u);
    for (size_t y = 0; y < 16; y++) {
        EXPECT_NEAR(d[y], (y == 3 || y == 13) ? 0.5 : 0.0, 1e-9) << y;
    }
    for (int x = 5; x <= 9; x++) {
        auto dx = qpe_distribution(frame_with_t(0.375), x);
        const size_t lo = size_t{3} << (x - 4);
        const size_t hi = (size_t{1} << x) - lo;
        for (size_t y = 0; y < dx.size(); y++) {
            EXPECT_NEAR(dx[y], (y == lo || y == hi) ? 0.5 : 0.0, 1e-9);
        }
    }
}

TEST(qpe_distribution, zero_angle) {
    auto d = qpe_distribution(frame_with_t(0), 6);
    EXPECT_NEAR(d[0], 1, 1e-12);
}

TEST(qpe_distribution, matches_oracle_law) {
    std::mt19937_64 g(41);
    std::uniform_real_distribution<double> u(0, 1);
    for (int x = 1; x <= 8; x++) {
        for (int rep = 0; rep < 5; rep++) {
            const double t = u(g);
            auto got = qpe_distribution(EulerAngles(2 * M_PI * u(g), M_PI * t, 2 * M_PI * u(g)), x);
            auto want = oracle_distribution(t, x);
            double total = 0;
            for (size_t y = 0; y < want.size(); y++) {
                EXPECT_NEAR(got[y], want[y], 1e-9);
                total += got[y];
            }
            EXPECT_NEAR(total, 1, 1e-9);
        }
    }
}

TEST(qpe_distribution, eigenvalue_symmetry) {
    std::mt19937_64 g(42);
    std::uniform_real_distribution<double> u(0, 1);
    for (int x : {3, 6, 10}) {
        auto d = qpe_distribution(frame_with_t(u(g)), x);
        const size_t dim = d.size();
        for (size_t y = 1; y < dim; y++) {
            EXPECT_NEAR(d[y], d[dim - y], 1e-9);
        }
    }
}

TEST(qpe_distribution, serial_and_parallel_agree_bitwise) {
    auto a = qpe_distribution(frame_with_t(0.2718), 12, kernels::Exec::serial);
    auto b = qpe_distribution(frame_with_t(0.2718), 12, kernels::Exec::parallel);
    EXPECT_EQ(a, b);
}

TEST(qpe_success_probability, meets_bound_on_grid) {
    for (int k : {2, 3, 4}) {
        for (double eps : {0.5, 0.25}) {
            for (int i = 0; i < 64; i++) {
                const double t = (i + 0.5) / 64;
                EXPECT_GE(qpe_success_probability(frame_with_t(t), k, eps), 1 - eps) << "k=" << k << " t=" << t;
            }
        }
    }
}

TEST(qpe_success_probability, agrees_with_oracle_law) {
    const int k = 3;
    const double eps = 0.25;
    const int x = register_size(k, eps);
    for (double t : {0.1, 1.0 / 3, 0.77}) {
        auto law = oracle_distribution(t, x);
        double p = 0;
        for (size_t y = 0; y < law.size(); y++) {
            if (std::abs(2 * std::min(double(y) / law.size(), 1 - double(y) / law.size()) - t) <=
                std::ldexp(1.0, -(k + 1)) + 1e-12) {
                p += law[y];
            }
        }
        EXPECT_NEAR(qpe_success_probability(frame_with_t(t), k, eps), p, 1e-9);
    }
}

TEST(run_qpe, third_sampled_success) {
    const int trials = 2000;
    const int k = 4;
    const double eps = 0.25;
    auto ok = run_trials(trials, [&](size_t i) {
        Session s(frame_with_t(1.0 / 3), 3, Encoding::clock_qubit);
        RngStream rng(3, stream_index(i, "qpe"));
        QpeResult r = run_qpe(s, k, eps, rng);
        return std::abs(r.t_hat - 1.0 / 3) <= std::ldexp(1.0, -(k + 1)) ? 1 : 0;
    });
    int total = 0;
    for (int v : ok) {
        total += v;
    }
    const double margin = 3 * std::sqrt(0.25 * 0.75 / trials);
    EXPECT_GE(total / double(trials), 0.75 - margin);
}

TEST(run_qpe, zero_angle_and_determinism) {
    Session s(frame_with_t(0), 1, Encoding::clock_qubit);
    RngStream rng(1, 1);
    for (int i = 0; i < 20; i++) {
        QpeResult r = run_qpe(s, 3, 0.25, rng);
        EXPECT_EQ(r.outcome, 0u);
        EXPECT_EQ(r.t_hat, 0);
    }
    Session a(frame_with_t(0.41), 1), b(frame_with_t(0.41), 1);
    RngStream ra(9, 9), rb(9, 9);
    for (int i = 0; i < 20; i++) {
        EXPECT_EQ(run_qpe(a, 4, 0.1, ra).outcome, run_qpe(b, 4, 0.1, rb).outcome);
    }
}

TEST(run_qpe, rejects_oversized_register) {
    Session s(frame_with_t(0.3), 1);
    RngStream rng(1, 1);
    EXPECT_THROW(run_qpe_x(s, 21, rng), std::invalid_argument);
    EXPECT_THROW(run_qpe_x(s, 0, rng), std::invalid_argument);
    EXPECT_THROW(run_qpe(s, 19, 0.25, rng), std::invalid_argument);
}

TEST(qpe_ledger, spec_examples) {
    QpeLedger clock = qpe_ledger_for_register(3, Encoding::clock_qubit);
    EXPECT_EQ(clock.work_oneway, 14u);
    EXPECT_EQ(clock.control_oneway, 6u);
    EXPECT_EQ(clock.multiplier, 1);
    QpeLedger logical = qpe_ledger_for_register(3, Encoding::logical_triple);
    EXPECT_EQ(logical.physical_control_oneway(), 18u);
    EXPECT_EQ(logical.physical_work_oneway(), 42u);
    EXPECT_THROW(qpe_ledger_for_register(3, Encoding::bare), std::invalid_argument);
}

TEST(qpe_ledger, work_count_is_exponential_in_register) {
    for (int x = 1; x <= 12; x++) {
        QpeLedger l = qpe_ledger_for_register(x, Encoding::clock_qubit);
        EXPECT_EQ(l.work_oneway, 2 * ((uint64_t{1} << x) - 1));
        EXPECT_EQ(l.control_oneway, 2u * x);
        EXPECT_EQ(l.total.oneway_qubits(), l.work_oneway + l.control_oneway);
    }
    EXPECT_EQ(qpe_ledger(4, 0.25, Encoding::clock_qubit).work_oneway, 2 * ((uint64_t{1} << 6) - 1));
}

TEST(run_qpe, ledger_matches_qpe_ledger) {
    Session s(frame_with_t(0.6), 1, Encoding::logical_triple);
    RngStream rng(1, 1);
    QpeResult r = run_qpe_x(s, 5, rng);
    QpeLedger l = qpe_ledger_for_register(5, Encoding::logical_triple);
    EXPECT_EQ(r.ledger, l.total);
    EXPECT_EQ(r.ledger, s.ledger());
    EXPECT_EQ(s.ledger().physical_oneway_qubits(), 3 * (l.work_oneway + l.control_oneway));
}
