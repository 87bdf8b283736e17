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

#include "refalign/emit.h"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace refalign {

namespace {

using nlohmann::ordered_json;

void dump_into(const ordered_json &v, int indent, std::string &out) {
    const std::string pad(static_cast<size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<size_t>(indent + 1) * 2, ' ');
    switch (v.type()) {
        case ordered_json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            size_t i = 0;
            for (auto it = v.begin(); it != v.end(); ++it, ++i) {
                out += inner;
                out += ordered_json(it.key()).dump();
                out += ": ";
                dump_into(it.value(), indent + 1, out);
                out += i + 1 < v.size() ? ",\n" : "\n";
            }
            out += pad + "}";
            return;
        }
        case ordered_json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (size_t i = 0; i < v.size(); i++) {
                out += inner;
                dump_into(v[i], indent + 1, out);
                out += i + 1 < v.size() ? ",\n" : "\n";
            }
            out += pad + "]";
            return;
        }
        case ordered_json::value_t::number_float: {
            double d = v.get<double>();
            out += std::isfinite(d) ? format_number(d) : "null";
            return;
        }
        default:
            out += v.dump();
    }
}

}  // namespace

Format parse_format(std::string_view name) {
    if (name == "csv") {
        return Format::csv;
    }
    if (name == "json") {
        return Format::json;
    }
    throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return fmt::format("{:.17g}", v);
}

std::string dump_json(const ordered_json &value) {
    std::string out;
    dump_into(value, 0, out);
    out += "\n";
    return out;
}

ordered_json ledger_json(const CommLedger &l) {
    ordered_json j;
    j["fwd_qubits"] = l.forward_qubits;
    j["bwd_qubits"] = l.backward_qubits;
    j["fwd_cbits"] = l.forward_cbits;
    j["bwd_cbits"] = l.backward_cbits;
    j["rounds_seq"] = l.rounds_sequential;
    j["rounds_par"] = l.rounds_parallel;
    return j;
}

std::string render_sweep(const std::vector<SweepRow> &rows, Format format) {
    if (format == Format::csv) {
        std::string out(kSweepCsvHeader);
        out += "\n";
        for (const SweepRow &r : rows) {
            out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.k, format_number(r.epsilon), r.n_stage,
                               r.roundtrips_formula, r.oneway_qubits, r.trials, format_number(r.f_min),
                               format_number(r.f_mean), format_number(r.f_bound_paper), r.seed);
        }
        return out;
    }
    ordered_json arr = ordered_json::array();
    for (const SweepRow &r : rows) {
        ordered_json j;
        j["k"] = r.k;
        j["epsilon"] = r.epsilon;
        j["n_stage"] = r.n_stage;
        j["roundtrips_formula"] = r.roundtrips_formula;
        j["oneway_qubits"] = r.oneway_qubits;
        j["trials"] = r.trials;
        j["f_min"] = r.f_min;
        j["f_mean"] = r.f_mean;
        j["f_bound_paper"] = r.f_bound_paper;
        j["seed"] = r.seed;
        j["c_measured"] = r.c_measured;
        j["worst_frame"] = r.worst_frame;
        j["failed"] = r.failed;
        if (r.failed > 0) {
            j["error"] = r.error;
        }
        arr.push_back(std::move(j));
    }
    return dump_json(arr);
}

std::string render_vignettes(const std::vector<VignetteResult> &results, Format format) {
    if (format == Format::csv) {
        std::string out(kVignetteCsvHeader);
        out += "\n";
        for (const VignetteResult &r : results) {
            out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.name, r.trials, format_number(r.avg_fidelity),
                               format_number(r.std_error), r.ledger.forward_qubits, r.ledger.backward_qubits,
                               r.ledger.forward_cbits, r.ledger.backward_cbits, r.seed);
        }
        return out;
    }
    ordered_json arr = ordered_json::array();
    for (const VignetteResult &r : results) {
        ordered_json j;
        j["vignette"] = r.name;
        j["trials"] = r.trials;
        j["avg_fidelity"] = r.avg_fidelity;
        j["stderr"] = r.std_error;
        j["ledger"] = ledger_json(r.ledger);
        j["seed"] = r.seed;
        ordered_json stats = ordered_json::object();
        for (const auto &[key, value] : r.stats) {
            stats[key] = value;
        }
        j["stats"] = std::move(stats);
        arr.push_back(std::move(j));
    }
    return dump_json(arr);
}

void write_output(const std::string &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    f << content;
    f.flush();
    if (!f) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

}  // namespace refalign
