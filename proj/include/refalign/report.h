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

#ifndef REFALIGN_REPORT_H
#define REFALIGN_REPORT_H

#include "refalign/frames.h"
#include "refalign/session.h"

namespace refalign {

/// Outcome of one direction-finding run scored against the hidden frame.
struct FidelityReport {
    EulerAngles truth_angles;
    Direction truth = Direction::z();
    Direction estimate = Direction::z();
    /// Angle between estimate and truth, radians.
    double delta_alpha = 0;
    /// 1/2 (1 + cos delta_alpha).
    double fidelity = 1;
    /// delta_alpha within the k-bit angular budget 2 pi 2^-k.
    bool success = true;
    CommLedger ledger;
};

FidelityReport score_direction(const EulerAngles &truth_angles, const Direction &truth, const Direction &estimate,
                               int k, const CommLedger &ledger);

}  // namespace refalign

#endif
