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

#ifndef REFALIGN_ANALYSIS_H
#define REFALIGN_ANALYSIS_H

#include <cstdint>
#include <string>
#include <vector>

#include "refalign/frames.h"
#include "refalign/kitaev.h"

namespace refalign {

/// (1 - epsilon)^2 (1 - 2 pi^2 2^-2k).
double fidelity_bound(int k, double epsilon);

/// (1 - epsilon)^2 (1 - c 2^-2k) for a general constant c.
double fidelity_bound_with_constant(int k, double epsilon, double c);

/// Smallest c with f >= (1 - epsilon)^2 (1 - c 2^-2k).
double measured_constant(int k, double epsilon, double f);

struct GridFrame {
    std::string label;
    EulerAngles angles;
};

/// Frames probing the weak spots of direction finding at precision k: the
/// identity, dyadic and mirror-fragile T, non-dyadic T, target directions with
/// one component at 2^-(k+1), and 16 Haar-random frames drawn from `seed`.
std::vector<GridFrame> adversarial_grid(int k, uint64_t seed);

struct SweepRow {
    int k = 0;
    double epsilon = 0;
    uint64_t n_stage = 0;
    /// 6 n (2^k - 1): round trips of the six overlap estimations.
    uint64_t roundtrips_formula = 0;
    /// One-way qubits of one find_direction run, read from the ledger.
    uint64_t oneway_qubits = 0;
    uint64_t trials = 0;
    /// Minimum over grid frames of the per-frame mean fidelity.
    double f_min = 0;
    /// Mean fidelity over all frames and trials.
    double f_mean = 0;
    double f_bound_paper = 0;
    uint64_t seed = 0;

    /// Runs that threw, with the first message. Failed runs are excluded from the means.
    uint64_t failed = 0;
    std::string error;
    /// Label of the frame attaining f_min.
    std::string worst_frame;
    /// measured_constant(k, epsilon, f_min).
    double c_measured = 0;
};

/// One row per k in [k_lo, k_hi] with epsilon = 2^-2k; `trials` runs per grid frame.
/// Estimator errors become failed runs and never abort the sweep.
std::vector<SweepRow> scaling_sweep(int k_lo, int k_hi, uint64_t trials, uint64_t seed);

struct SlopeFit {
    double slope = 0;
    double intercept = 0;
    size_t points = 0;
};

/// Least-squares line through (x_i, y_i).
SlopeFit fit_line(const std::vector<double> &x, const std::vector<double> &y);

/// Slope of log2(1 - f_min) against log2(roundtrips_formula), or against
/// log2(oneway_qubits) when `oneway` is set. Rows with f_min >= 1 are skipped.
SlopeFit sweep_slope(const std::vector<SweepRow> &rows, bool oneway = false);

}  // namespace refalign

#endif
