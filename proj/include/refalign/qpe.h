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

#ifndef REFALIGN_QPE_H
#define REFALIGN_QPE_H

#include <cstdint>
#include <vector>

#include "refalign/kernels.h"
#include "refalign/session.h"

namespace refalign {

class RngStream;

/// Largest control register simulated.
inline constexpr int kMaxQpeControls = 20;

/// x = k + ceil(log2(2 + 1 / (2 epsilon))). Requires k >= 1 and 0 < epsilon < 1.
int register_size(int k, double epsilon);

/// Control qubits 0..x-1 (qubit 0 least significant), work qubit x.
/// Eigenphases of U are +-theta, so outcomes cluster at y / 2^x ~ T / 2 and
/// 1 - T / 2 with weight 1/2 each for the |z+> work state.
struct QpeResult {
    int x = 0;
    uint64_t outcome = 0;
    double t_hat = 0;
    CommLedger ledger;
};

/// 2 min(y / 2^x, 1 - y / 2^x).
double qpe_t_from_outcome(uint64_t y, int x);

/// Exact outcome distribution of the control register for the hidden frame,
/// computed from the final amplitudes.
std::vector<double> qpe_distribution(const EulerAngles &hidden, int x, kernels::Exec exec = kernels::Exec::automatic);

/// Probability that |T_hat - T| <= 2^-(k+1) at x = register_size(k, epsilon).
double qpe_success_probability(const EulerAngles &hidden, int k, double epsilon);

/// One sampled run. Charges the session: per control level j the control qubit
/// goes to Alice and back once, and the work spin makes 2^j round trips.
QpeResult run_qpe(Session &session, int k, double epsilon, RngStream &rng);

/// Same protocol with an explicit register size.
QpeResult run_qpe_x(Session &session, int x, RngStream &rng);

/// Communication for a register of x controls, split by carrier.
struct QpeLedger {
    uint64_t work_oneway = 0;
    uint64_t control_oneway = 0;
    int multiplier = 1;
    CommLedger total;

    uint64_t physical_work_oneway() const {
        return work_oneway * multiplier;
    }
    uint64_t physical_control_oneway() const {
        return control_oneway * multiplier;
    }
};

/// Requires encoding logical_triple or clock_qubit: a bare register would not
/// be frame independent. Throws std::invalid_argument otherwise.
QpeLedger qpe_ledger_for_register(int x, Encoding encoding);
QpeLedger qpe_ledger(int k, double epsilon, Encoding encoding);

}  // namespace refalign

#endif
