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

#include "refalign/cli.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <regex>
#include <stdexcept>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "refalign/analysis.h"
#include "refalign/emit.h"
#include "refalign/errors.h"
#include "refalign/kitaev.h"
#include "refalign/parallel.h"
#include "refalign/qpe.h"
#include "refalign/rng.h"
#include "refalign/vignettes.h"

namespace refalign {

namespace {

using nlohmann::ordered_json;

/// Argument-level failure detected after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string k_text;
    double epsilon = 0.1;
    uint64_t seed = 0;
    bool seed_given = false;
    uint64_t trials = 1;
    double theta = 0;
    double phi = 0;
    double psi = 0;
    bool random_frame = false;
    std::string output;
    std::string format;
    std::string encoding;
    double delta = 0.25;
    int threads = 0;
    std::string vignette;
};

int parse_k(const std::string &text) {
    std::size_t used = 0;
    int k = 0;
    try {
        k = std::stoi(text, &used);
    } catch (const std::exception &) {
        throw UsageError("--k must be an integer, got '" + text + "'");
    }
    if (used != text.size()) {
        throw UsageError("--k must be an integer, got '" + text + "'");
    }
    return k;
}

std::pair<int, int> parse_k_range(const std::string &text) {
    static const std::regex range(R"((\d+)\.\.(\d+))");
    std::smatch m;
    if (std::regex_match(text, m, range)) {
        int lo = std::stoi(m[1]);
        int hi = std::stoi(m[2]);
        if (hi < lo) {
            throw UsageError("--k range must be increasing, got '" + text + "'");
        }
        return {lo, hi};
    }
    int k = parse_k(text);
    return {k, k};
}

EulerAngles frame_of(const RunConfig &c) {
    if (c.random_frame) {
        RngStream rng(c.seed, stream_index(0, "cli-frame"));
        return random_frame(rng);
    }
    try {
        return EulerAngles(c.phi, c.theta, c.psi);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

Encoding encoding_of(const RunConfig &c, Encoding fallback) {
    if (c.encoding.empty()) {
        return fallback;
    }
    try {
        return parse_encoding(c.encoding);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

Format format_of(const RunConfig &c, Format fallback) {
    if (c.format.empty()) {
        return fallback;
    }
    try {
        return parse_format(c.format);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

void check_common(const RunConfig &c, int k, int k_max) {
    if (k < 1 || k > k_max) {
        throw UsageError(fmt::format("--k must lie in [1, {}], got {}", k_max, k));
    }
    if (!(c.epsilon > 0 && c.epsilon < 1)) {
        throw UsageError("--epsilon must lie in (0, 1)");
    }
    if (c.trials < 1) {
        throw UsageError("--trials must be at least 1");
    }
    if (!(c.delta > 0 && c.delta <= 0.5)) {
        throw UsageError("--delta must lie in (0, 0.5]");
    }
}

// Single estimates have a JSON schema only.
void require_json(const RunConfig &c) {
    if (format_of(c, Format::json) != Format::json) {
        throw UsageError("this subcommand writes JSON only");
    }
}

void emit_structured(const RunConfig &c, const std::string &content, std::ostream &out) {
    if (c.output.empty()) {
        out << content;
    } else {
        try {
            write_output(c.output, content);
        } catch (const std::runtime_error &e) {
            throw UsageError(e.what());
        }
        out << "wrote " << c.output << "\n";
    }
}

ordered_json header_json(std::string_view protocol, int k, double epsilon, uint64_t seed) {
    ordered_json j;
    j["protocol"] = protocol;
    j["k"] = k;
    j["epsilon"] = epsilon;
    j["seed"] = seed;
    return j;
}

ordered_json t_json(double t, std::optional<double> half_width) {
    ordered_json j;
    j["t"] = t;
    j["theta_rad"] = t * M_PI;
    if (half_width) {
        j["half_width"] = *half_width;
    }
    return j;
}

ordered_json vec_json(const Vec3 &v) {
    ordered_json j;
    j["x"] = v[0];
    j["y"] = v[1];
    j["z"] = v[2];
    return j;
}

ordered_json angles_json(const EulerAngles &a) {
    ordered_json j;
    j["phi"] = a.phi;
    j["theta"] = a.theta;
    j["psi"] = a.psi;
    return j;
}

/// Runs `trials` copies of `one(i)` and wraps them: a single object for one
/// trial, otherwise a summary with the per-run objects.
template <class Fn>
ordered_json run_estimates(std::string_view protocol, const RunConfig &c, int k, Fn &&one) {
    auto runs = run_trials(c.trials, [&](size_t i) { return one(i); });
    if (runs.size() == 1) {
        return runs[0];
    }
    size_t ok = 0;
    for (const auto &r : runs) {
        ok += r["success"].template get<bool>() ? 1 : 0;
    }
    ordered_json j = header_json(protocol, k, c.epsilon, c.seed);
    j["trials"] = c.trials;
    j["success_rate"] = static_cast<double>(ok) / static_cast<double>(runs.size());
    j["runs"] = runs;
    return j;
}

void print_summary(std::ostream &out, const ordered_json &j) {
    const ordered_json &first = j.contains("runs") ? j["runs"][0] : j;
    out << fmt::format("{}: k={} epsilon={} seed={}\n", first["protocol"].get<std::string>(), first["k"].get<int>(),
                       format_number(first["epsilon"].get<double>()), first["seed"].get<uint64_t>());
    out << fmt::format("  estimate T = {}  (truth {})\n", format_number(first["estimate"]["t"].get<double>()),
                       format_number(first["truth"]["t"].get<double>()));
    out << fmt::format("  one-way qubits = {}\n", first["ledger"]["fwd_qubits"].get<uint64_t>() +
                                                       first["ledger"]["bwd_qubits"].get<uint64_t>());
    if (j.contains("success_rate")) {
        out << fmt::format("  success rate over {} trials = {}\n", j["trials"].get<uint64_t>(),
                           format_number(j["success_rate"].get<double>()));
    } else {
        out << "  success = " << (first["success"].get<bool>() ? "true" : "false") << "\n";
    }
}

RngStream trial_stream(const RunConfig &c, size_t i, std::string_view protocol) {
    return RngStream(c.seed, stream_index(i, protocol));
}

int cmd_estimate_theta(const RunConfig &c, std::ostream &out) {
    require_json(c);
    const int k = parse_k(c.k_text);
    check_common(c, k, 16);
    const EulerAngles frame = frame_of(c);
    const Encoding enc = encoding_of(c, Encoding::bare);
    const KitaevOptions opts{c.delta};
    const double truth = frame.theta / M_PI;
    ordered_json j = run_estimates("estimate-theta", c, k, [&](size_t i) {
        Session session(frame, c.seed, enc);
        RngStream rng = trial_stream(c, i, "estimate-theta");
        IntervalEstimate est = estimate_theta(session, k, c.epsilon, rng, opts);
        ordered_json r = header_json("estimate-theta", k, c.epsilon, c.seed);
        r["estimate"] = t_json(est.center, est.half_width);
        r["truth"] = t_json(truth, std::nullopt);
        r["success"] = std::abs(est.center - truth) <= est.half_width;
        r["ledger"] = ledger_json(session.ledger());
        r["encoding"] = encoding_name(enc);
        r["physical_oneway_qubits"] = session.ledger().physical_oneway_qubits();
        return r;
    });
    print_summary(out, j);
    emit_structured(c, dump_json(j), out);
    return kExitOk;
}

int cmd_find_direction(const RunConfig &c, std::ostream &out) {
    require_json(c);
    const int k = parse_k(c.k_text);
    check_common(c, k, 16);
    const EulerAngles frame = frame_of(c);
    const Encoding enc = encoding_of(c, Encoding::bare);
    const KitaevOptions opts{c.delta};
    ordered_json j = run_estimates("find-direction", c, k, [&](size_t i) {
        Session session(frame, c.seed, enc);
        RngStream rng = trial_stream(c, i, "find-direction");
        DirectionEstimate d = find_direction(session, k, c.epsilon, rng, opts);
        const double polar_est = std::acos(std::clamp(d.estimate[2], -1.0, 1.0));
        const double polar_true = std::acos(std::clamp(d.report.truth[2], -1.0, 1.0));
        ordered_json r = header_json("find-direction", k, c.epsilon, c.seed);
        r["estimate"] = t_json(polar_est / M_PI, std::ldexp(1.0, -(k + 1)));
        r["truth"] = t_json(polar_true / M_PI, std::nullopt);
        r["success"] = d.report.success;
        r["ledger"] = ledger_json(session.ledger());
        r["direction"] = vec_json(d.estimate.vec());
        r["truth_direction"] = vec_json(d.report.truth.vec());
        r["delta_alpha"] = d.report.delta_alpha;
        r["fidelity"] = d.report.fidelity;
        r["encoding"] = encoding_name(enc);
        return r;
    });
    print_summary(out, j);
    emit_structured(c, dump_json(j), out);
    return kExitOk;
}

int cmd_estimate_euler(const RunConfig &c, std::ostream &out) {
    require_json(c);
    const int k = parse_k(c.k_text);
    check_common(c, k, 16);
    const EulerAngles frame = frame_of(c);
    const Encoding enc = encoding_of(c, Encoding::bare);
    const KitaevOptions opts{c.delta};
    const double tol = M_PI * std::ldexp(1.0, -k);
    ordered_json j = run_estimates("estimate-euler", c, k, [&](size_t i) {
        Session session(frame, c.seed, enc);
        RngStream rng = trial_stream(c, i, "estimate-euler");
        EulerEstimate e = estimate_euler(session, k, c.epsilon, rng, opts);
        const double d_phi = circular_angle_distance(e.angles.phi, frame.phi);
        const double d_theta = std::abs(e.angles.theta - frame.theta);
        const double d_psi = circular_angle_distance(e.angles.psi, frame.psi);
        ordered_json r = header_json("estimate-euler", k, c.epsilon, c.seed);
        r["estimate"] = t_json(e.angles.theta / M_PI, std::ldexp(1.0, -(k + 1)));
        r["truth"] = t_json(frame.theta / M_PI, std::nullopt);
        r["success"] = d_phi <= tol && d_theta <= tol && d_psi <= tol;
        r["ledger"] = ledger_json(session.ledger());
        r["angles"] = angles_json(e.angles);
        r["truth_angles"] = angles_json(frame);
        r["angle_errors"] = angles_json(EulerAngles::canonical(d_phi, d_theta, d_psi));
        r["encoding"] = encoding_name(enc);
        return r;
    });
    print_summary(out, j);
    emit_structured(c, dump_json(j), out);
    return kExitOk;
}

int cmd_qpe(const RunConfig &c, std::ostream &out) {
    const int k = parse_k(c.k_text);
    check_common(c, k, kMaxQpeControls);
    const int x = register_size(k, c.epsilon);
    if (x > kMaxQpeControls) {
        throw UsageError(fmt::format("register size {} exceeds {}", x, kMaxQpeControls));
    }
    const EulerAngles frame = frame_of(c);
    const Encoding enc = encoding_of(c, Encoding::logical_triple);
    if (enc == Encoding::bare) {
        throw UsageError("qpe needs --encoding logical or clock");
    }
    const double truth = frame.theta / M_PI;
    const double half = std::ldexp(1.0, -(k + 1));

    if (format_of(c, Format::json) == Format::csv) {
        std::vector<double> probs = qpe_distribution(frame, x);
        std::string csv = "y,t_hat,probability\n";
        for (size_t y = 0; y < probs.size(); y++) {
            csv += fmt::format("{},{},{}\n", y, format_number(qpe_t_from_outcome(y, x)), format_number(probs[y]));
        }
        out << fmt::format("qpe: k={} epsilon={} x={} exact success probability {}\n", k, format_number(c.epsilon), x,
                           format_number(qpe_success_probability(frame, k, c.epsilon)));
        emit_structured(c, csv, out);
        return kExitOk;
    }

    ordered_json j = run_estimates("qpe", c, k, [&](size_t i) {
        Session session(frame, c.seed, enc);
        RngStream rng = trial_stream(c, i, "qpe");
        QpeResult q = run_qpe(session, k, c.epsilon, rng);
        ordered_json r = header_json("qpe", k, c.epsilon, c.seed);
        r["estimate"] = t_json(q.t_hat, half);
        r["truth"] = t_json(truth, std::nullopt);
        r["success"] = std::abs(q.t_hat - truth) <= half;
        r["ledger"] = ledger_json(session.ledger());
        r["register_size"] = x;
        r["outcome"] = q.outcome;
        r["encoding"] = encoding_name(enc);
        r["physical_oneway_qubits"] = session.ledger().physical_oneway_qubits();
        return r;
    });
    print_summary(out, j);
    emit_structured(c, dump_json(j), out);
    return kExitOk;
}

int cmd_vignette(const RunConfig &c, std::ostream &out) {
    if (c.trials < 1) {
        throw UsageError("--trials must be at least 1");
    }
    std::vector<std::string> names;
    if (c.vignette == "all") {
        names = vignette_names();
    } else {
        auto all = vignette_names();
        if (std::find(all.begin(), all.end(), c.vignette) == all.end()) {
            std::string list;
            for (const auto &n : all) {
                list += " " + n;
            }
            throw UsageError("unknown vignette '" + c.vignette + "'; choose one of:" + list + " all");
        }
        names.push_back(c.vignette);
    }
    std::vector<VignetteResult> results;
    for (const auto &n : names) {
        results.push_back(run_vignette(n, c.trials, c.seed));
        const VignetteResult &r = results.back();
        out << fmt::format("{}: trials={} avg_fidelity={} stderr={}\n", r.name, r.trials, format_number(r.avg_fidelity),
                           format_number(r.std_error));
    }
    emit_structured(c, render_vignettes(results, format_of(c, Format::csv)), out);
    return kExitOk;
}

int cmd_sweep(const RunConfig &c, std::ostream &out) {
    if (!c.seed_given) {
        throw UsageError("sweep requires --seed");
    }
    auto [lo, hi] = parse_k_range(c.k_text);
    if (lo < 1 || hi > 16) {
        throw UsageError("--k range must lie within [1, 16]");
    }
    if (c.trials < 1) {
        throw UsageError("--trials must be at least 1");
    }
    std::vector<SweepRow> rows = scaling_sweep(lo, hi, c.trials, c.seed);
    for (const SweepRow &r : rows) {
        out << fmt::format("k={} epsilon={} f_min={} f_mean={} bound={} c={} worst={}\n", r.k,
                           format_number(r.epsilon), format_number(r.f_min), format_number(r.f_mean),
                           format_number(r.f_bound_paper), format_number(r.c_measured), r.worst_frame);
    }
    if (rows.size() >= 2) {
        out << fmt::format("slope (formula units) = {}\n", format_number(sweep_slope(rows).slope));
        out << fmt::format("slope (one-way units) = {}\n", format_number(sweep_slope(rows, true).slope));
    }
    emit_structured(c, render_sweep(rows, format_of(c, Format::csv)), out);
    return kExitOk;
}

void add_frame_options(CLI::App *sub, RunConfig &c) {
    sub->add_option("--theta", c.theta, "Euler angle theta in radians, [0, pi]");
    sub->add_option("--phi", c.phi, "Euler angle phi in radians, [0, 2 pi)");
    sub->add_option("--psi", c.psi, "Euler angle psi in radians, [0, 2 pi)");
    sub->add_flag("--random-frame", c.random_frame, "Draw a Haar-random hidden frame from the seed");
}

void add_run_options(CLI::App *sub, RunConfig &c, bool with_epsilon) {
    sub->add_option_function<uint64_t>(
        "--seed",
        [&c](const uint64_t &s) {
            c.seed = s;
            c.seed_given = true;
        },
        "Master seed");
    sub->add_option("--trials", c.trials, "Independent runs");
    sub->add_option("--output", c.output, "Write structured output to this path");
    sub->add_option("--format", c.format, "Structured output format: csv or json");
    sub->add_option("--threads", c.threads, "Worker threads (results do not depend on it)");
    if (with_epsilon) {
        sub->add_option("--epsilon", c.epsilon, "Failure budget in (0, 1)");
    }
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig c;
    CLI::App app{"Reference-frame alignment protocol simulator", "refalign"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    auto *theta = app.add_subcommand("estimate-theta", "Estimate T = theta / pi by iterative round trips");
    auto *euler = app.add_subcommand("estimate-euler", "Estimate all three Euler angles");
    auto *direction = app.add_subcommand("find-direction", "Estimate Alice's z axis in Bob's frame");
    auto *qpe = app.add_subcommand("qpe", "Fourier-transform phase estimation on a simulated register");
    auto *vignette = app.add_subcommand("vignette", "Run an introductory fixed-communication protocol");
    auto *sweep = app.add_subcommand("sweep", "Worst-case fidelity sweep over k with epsilon = 2^-2k");

    for (auto *sub : {theta, euler, direction, qpe}) {
        c.k_text = "4";
        sub->add_option("--k", c.k_text, "Bits of precision");
        add_run_options(sub, c, true);
        add_frame_options(sub, c);
        sub->add_option("--encoding", c.encoding, "bare, logical, or clock");
    }
    for (auto *sub : {theta, euler, direction}) {
        sub->add_option("--delta", c.delta, "Per-stage Chernoff precision");
    }

    vignette->add_option("name", c.vignette, "Vignette name, or 'all'")->required();
    add_run_options(vignette, c, false);

    sweep->add_option("--k", c.k_text, "k or a range lo..hi");
    add_run_options(sweep, c, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    if (vignette->parsed() && c.trials == 1 && vignette->count("--trials") == 0) {
        c.trials = 100000;
    }
    if (sweep->parsed()) {
        if (sweep->count("--k") == 0) {
            c.k_text = "2..8";
        }
        if (sweep->count("--trials") == 0) {
            c.trials = 20;
        }
    }
    set_worker_count(c.threads);

    try {
        if (theta->parsed()) {
            return cmd_estimate_theta(c, out);
        }
        if (euler->parsed()) {
            return cmd_estimate_euler(c, out);
        }
        if (direction->parsed()) {
            return cmd_find_direction(c, out);
        }
        if (qpe->parsed()) {
            return cmd_qpe(c, out);
        }
        if (vignette->parsed()) {
            return cmd_vignette(c, out);
        }
        return cmd_sweep(c, out);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConvergenceFailure &e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const DegenerateInput &e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception &e) {
        err << "failure: " << e.what() << "\n";
        return kExitNumeric;
    }
}

}  // namespace refalign
