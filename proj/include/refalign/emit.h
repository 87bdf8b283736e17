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

#ifndef REFALIGN_EMIT_H
#define REFALIGN_EMIT_H

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "refalign/analysis.h"
#include "refalign/session.h"
#include "refalign/vignettes.h"

namespace refalign {

enum class Format { csv, json };

/// Accepts "csv" and "json". Throws std::invalid_argument otherwise.
Format parse_format(std::string_view name);

inline constexpr std::string_view kSweepCsvHeader =
    "k,epsilon,n_stage,roundtrips_formula,oneway_qubits,trials,f_min,f_mean,f_bound_paper,seed";
inline constexpr std::string_view kVignetteCsvHeader =
    "vignette,trials,avg_fidelity,stderr,fwd_qubits,bwd_qubits,fwd_cbits,bwd_cbits,seed";

/// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

/// Serializes with two-space indentation, keys in insertion order, floating
/// point numbers at 17 significant digits and non-finite numbers as null.
std::string dump_json(const nlohmann::ordered_json &value);

nlohmann::ordered_json ledger_json(const CommLedger &ledger);

std::string render_sweep(const std::vector<SweepRow> &rows, Format format);
std::string render_vignettes(const std::vector<VignetteResult> &results, Format format);

/// Writes `content` to `path`. Throws std::runtime_error naming the path on failure.
void write_output(const std::string &path, const std::string &content);

}  // namespace refalign

#endif
