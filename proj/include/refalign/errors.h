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

#ifndef REFALIGN_ERRORS_H
#define REFALIGN_ERRORS_H

#include <stdexcept>
#include <string>

namespace refalign {

/// Two axes handed to a frame reconstruction were too close to parallel to
/// define an orthonormal frame.
struct DegenerateInput : std::runtime_error {
    explicit DegenerateInput(const std::string &what) : std::runtime_error(what) {
    }
};

/// A numerical optimizer was still improving when it ran out of refinement levels.
struct ConvergenceFailure : std::runtime_error {
    explicit ConvergenceFailure(const std::string &what) : std::runtime_error(what) {
    }
};

}  // namespace refalign

#endif
