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

#ifndef REFALIGN_PARALLEL_H
#define REFALIGN_PARALLEL_H

#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <utility>
#include <vector>

#include "refalign/kernels.h"

namespace refalign {

/// Sets the OpenMP worker count (no-op without OpenMP). Values < 1 restore the default.
void set_worker_count(int workers);
int worker_count();

/// Runs fn(0) .. fn(count - 1) and returns the results in index order. Each
/// call must depend only on its index (derive RNG streams from it), which makes
/// the output independent of the worker count. With Exec::serial this is the
/// plain loop used as the reference in tests.
///
/// If any call throws, the exception from the lowest failing index is rethrown
/// after all calls finish.
template <class Fn>
auto run_trials(size_t count, Fn &&fn, kernels::Exec exec = kernels::Exec::parallel)
    -> std::vector<decltype(fn(size_t{0}))> {
    using Result = decltype(fn(size_t{0}));
    std::vector<std::optional<Result>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    auto body = [&](size_t i) {
        try {
            slots[i].emplace(fn(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (exec == kernels::Exec::serial || count < 2) {
        for (size_t i = 0; i < count; i++) {
            body(i);
        }
    } else {
#pragma omp parallel for schedule(dynamic, 1)
        for (int64_t i = 0; i < static_cast<int64_t>(count); i++) {
            body(static_cast<size_t>(i));
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    std::vector<Result> out;
    out.reserve(count);
    for (auto &s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

}  // namespace refalign

#endif
