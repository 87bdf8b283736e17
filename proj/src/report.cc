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

#include "refalign/report.h"

#include <cmath>

namespace refalign {

FidelityReport score_direction(const EulerAngles &truth_angles, const Direction &truth, const Direction &estimate,
                               int k, const CommLedger &ledger) {
    FidelityReport r;
    r.truth_angles = truth_angles;
    r.truth = truth;
    r.estimate = estimate;
    r.delta_alpha = angle_between(truth, estimate);
    r.fidelity = 0.5 * (1 + std::cos(r.delta_alpha));
    r.success = r.delta_alpha <= 2 * M_PI * std::ldexp(1.0, -k);
    r.ledger = ledger;
    return r;
}

}  // namespace refalign
