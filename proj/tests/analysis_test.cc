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

#include "refalign/analysis.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "refalign/emit.h"
#include "refalign/rng.h"

using namespace refalign;

namespace {

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

double t_of(const GridFrame &f) {
    return f.angles.theta / M_PI;
}

}  // namespace

TEST(fidelity_bound, spec_examples) {
    EXPECT_NEAR(fidelity_bound(3, 1.0 / 64), 0.6701, 1e-4);
    EXPECT_NEAR(fidelity_bound(30, 0), 1, 1e-15);
    EXPECT_EQ(fidelity_bound(3, 1), 0);
    EXPECT_DOUBLE_EQ(fidelity_bound_with_constant(3, 1.0 / 64, 2 * M_PI * M_PI), fidelity_bound(3, 1.0 / 64));
}

TEST(fidelity_bound, monotone) {
    for (int k = 1; k < 16; k++) {
        for (double eps : {0.5, 0.1, 0.01, 0.001}) {
            EXPECT_LE(fidelity_bound(k, eps), fidelity_bound(k + 1, eps));
            // For k <= 2 the angular factor is negative and the eps ordering flips.
            if (k >= 3) {
                EXPECT_GE(fidelity_bound(k, eps / 2), fidelity_bound(k, eps));
            }
        }
    }
}

TEST(measured_constant, inverts_bound) {
    for (int k : {2, 5, 8}) {
        for (double c : {0.5, 3.0, 19.7}) {
            const double eps = std::ldexp(1.0, -2 * k);
            EXPECT_NEAR(measured_constant(k, eps, fidelity_bound_with_constant(k, eps, c)), c, 1e-9);
        }
        EXPECT_EQ(measured_constant(k, 0.01, 1.0), 0);
    }
}

TEST(adversarial_grid, contents) {
    for (int k : {2, 5, 8}) {
        auto grid = adversarial_grid(k, 3);
        ASSERT_FALSE(grid.empty());
        EXPECT_EQ(grid[0].angles, EulerAngles(0, 0, 0));
        std::vector<double> want{std::ldexp(1.0, -k),
                                 0.25,
                                 0.5,
                                 0.75,
                                 0.5 - std::ldexp(1.0, -(k + 2)),
                                 0.5 + std::ldexp(1.0, -(k + 2)),
                                 1.0 / 3,
                                 1 / std::sqrt(2.0)};
        for (double t : want) {
            bool found = false;
            for (const auto &f : grid) {
                found = found || std::abs(t_of(f) - t) < 1e-12;
            }
            EXPECT_TRUE(found) << "T=" << t << " k=" << k;
        }
        // Four targets with one component at 2^-(k+1).
        int small = 0;
        for (const auto &f : grid) {
            Direction u = alice_axis_in_bob_frame(f.angles, Direction::z());
            for (int i = 0; i < 3; i++) {
                if (std::abs(std::abs(u[i]) - std::ldexp(1.0, -(k + 1))) < 1e-9) {
                    small++;
                    break;
                }
            }
        }
        EXPECT_GE(small, 4);
        std::set<std::string> labels;
        for (const auto &f : grid) {
            labels.insert(f.label);
        }
        EXPECT_EQ(labels.size(), grid.size());
        int random = 0;
        for (const auto &f : grid) {
            random += f.label.rfind("random", 0) == 0 ? 1 : 0;
        }
        EXPECT_EQ(random, 16);
    }
}

TEST(adversarial_grid, deterministic_in_seed) {
    auto a = adversarial_grid(4, 9), b = adversarial_grid(4, 9), c = adversarial_grid(4, 10);
    ASSERT_EQ(a.size(), b.size());
    EXPECT_EQ(a.size(), c.size());
    bool differs = false;
    for (size_t i = 0; i < a.size(); i++) {
        EXPECT_EQ(a[i].label, b[i].label);
        EXPECT_EQ(a[i].angles, b[i].angles);
        differs = differs || !(a[i].angles == c[i].angles);
    }
    EXPECT_TRUE(differs);
}

TEST(fit_line, exact_line_and_slope_skip) {
    SlopeFit f = fit_line({1, 2, 3, 4}, {3, 1, -1, -3});
    EXPECT_NEAR(f.slope, -2, 1e-12);
    EXPECT_NEAR(f.intercept, 5, 1e-12);
    EXPECT_EQ(f.points, 4u);
    std::vector<SweepRow> rows(3);
    for (int i = 0; i < 3; i++) {
        rows[i].roundtrips_formula = uint64_t{1} << (4 + 2 * i);
        rows[i].oneway_qubits = uint64_t{1} << (5 + 2 * i);
        rows[i].f_min = 1 - std::pow(2.0, -3.0 - 4 * i);
    }
    EXPECT_NEAR(sweep_slope(rows).slope, -2, 1e-9);
    EXPECT_NEAR(sweep_slope(rows, true).slope, -2, 1e-9);
    rows[2].f_min = 1;
    EXPECT_EQ(sweep_slope(rows).points, 2u);
}

TEST(scaling_sweep, small_rows_are_consistent) {
    auto rows = scaling_sweep(2, 3, 2, 5);
    ASSERT_EQ(rows.size(), 2u);
    for (const SweepRow &r : rows) {
        const double eps = std::ldexp(1.0, -2 * r.k);
        EXPECT_EQ(r.epsilon, eps);
        EXPECT_EQ(r.n_stage, chernoff_n(0.25, eps / 7 / (r.k + 1)));
        EXPECT_EQ(r.roundtrips_formula, 6 * r.n_stage * ((uint64_t{1} << r.k) - 1));
        const uint64_t n_sign = chernoff_n(0.25, eps / 7);
        const double reference = 2.0 * r.n_stage * ((1 << r.k) - 1) * 7 + n_sign;
        EXPECT_LE(r.oneway_qubits, 2.2 * reference);
        EXPECT_GE(r.oneway_qubits, reference / 2.2);
        EXPECT_EQ(r.oneway_qubits, 6 * (2 * r.n_stage * ((uint64_t{1} << r.k) - 1) + r.n_stage) + n_sign);
        EXPECT_LE(r.f_min, r.f_mean);
        EXPECT_EQ(r.f_bound_paper, fidelity_bound(r.k, eps));
        EXPECT_EQ(r.failed, 0u);
        EXPECT_FALSE(r.worst_frame.empty());
        EXPECT_GE(r.c_measured, 0);
    }
}

TEST(scaling_sweep, byte_identical_csv) {
    std::string a = render_sweep(scaling_sweep(2, 3, 2, 21), Format::csv);
    std::string b = render_sweep(scaling_sweep(2, 3, 2, 21), Format::csv);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, render_sweep(scaling_sweep(2, 3, 2, 22), Format::csv));
}

TEST(find_direction_report, fidelity_recomputed_from_delta_alpha) {
    for (const auto &f : adversarial_grid(3, 1)) {
        Session s(f.angles, 1);
        RngStream rng(1, stream_index(0, f.label));
        DirectionEstimate d = find_direction(s, 3, 1.0 / 64, rng);
        EXPECT_NEAR(d.report.fidelity, 0.5 * (1 + std::cos(d.report.delta_alpha)), 1e-12) << f.label;
    }
}

TEST(emit, format_number_and_parse_format) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(2), "2");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(format_number(-INFINITY), "-inf");
    EXPECT_EQ(parse_format("csv"), Format::csv);
    EXPECT_EQ(parse_format("json"), Format::json);
    EXPECT_THROW(parse_format("xml"), std::invalid_argument);
}

TEST(emit, empty_results_give_header_only_csv) {
    EXPECT_EQ(render_sweep({}, Format::csv), std::string(kSweepCsvHeader) + "\n");
    EXPECT_EQ(render_vignettes({}, Format::csv), std::string(kVignetteCsvHeader) + "\n");
}

TEST(emit, one_row_has_ten_fields) {
    SweepRow r;
    r.k = 3;
    r.epsilon = 1.0 / 64;
    r.n_stage = 10;
    r.roundtrips_formula = 420;
    r.oneway_qubits = 1000;
    r.trials = 2;
    r.f_min = 0.9;
    r.f_mean = 0.95;
    r.f_bound_paper = fidelity_bound(3, 1.0 / 64);
    r.seed = 7;
    auto lines = split(render_sweep({r}, Format::csv), '\n');
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0], kSweepCsvHeader);
    auto fields = split(lines[1], ',');
    ASSERT_EQ(fields.size(), 10u);
    EXPECT_EQ(fields[0], "3");
    EXPECT_EQ(std::stod(fields[1]), 1.0 / 64);
    EXPECT_EQ(std::stod(fields[6]), 0.9);
    EXPECT_EQ(fields[9], "7");
}

TEST(emit, vignette_csv_row) {
    VignetteResult v;
    v.name = "forward-spin";
    v.trials = 10;
    v.avg_fidelity = 2.0 / 3;
    v.std_error = 0.01;
    v.ledger.forward_qubits = 1;
    v.seed = 4;
    auto lines = split(render_vignettes({v}, Format::csv), '\n');
    ASSERT_EQ(lines.size(), 2u);
    auto fields = split(lines[1], ',');
    ASSERT_EQ(fields.size(), 9u);
    EXPECT_EQ(fields[0], "forward-spin");
    EXPECT_EQ(std::stod(fields[2]), 2.0 / 3);
    EXPECT_EQ(fields[4], "1");
    EXPECT_EQ(fields[5], "0");
}

TEST(emit, json_round_trips) {
    std::vector<SweepRow> rows = scaling_sweep(2, 2, 1, 3);
    std::string text = render_sweep(rows, Format::json);
    auto parsed = nlohmann::ordered_json::parse(text);
    EXPECT_EQ(dump_json(parsed), text);
    ASSERT_TRUE(parsed.is_array() || parsed.is_object());
    auto again = nlohmann::ordered_json::parse(dump_json(parsed));
    EXPECT_EQ(parsed, again);

    nlohmann::ordered_json j;
    j["x"] = 0.1;
    j["bad"] = std::nan("");
    j["list"] = {1, 2};
    std::string d = dump_json(j);
    EXPECT_NE(d.find("0.10000000000000001"), std::string::npos);
    EXPECT_NE(d.find("\"bad\": null"), std::string::npos);
    EXPECT_EQ(nlohmann::ordered_json::parse(d)["x"].get<double>(), 0.1);
}

TEST(emit, ledger_json_fields) {
    CommLedger l;
    l.forward_qubits = 1;
    l.backward_qubits = 2;
    l.forward_cbits = 3;
    l.backward_cbits = 4;
    l.rounds_sequential = 5;
    l.rounds_parallel = 6;
    auto j = ledger_json(l);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) {
        keys.push_back(it.key());
    }
    std::vector<std::string> head(keys.begin(), keys.begin() + 6);
    EXPECT_EQ(head, (std::vector<std::string>{"fwd_qubits", "bwd_qubits", "fwd_cbits", "bwd_cbits", "rounds_seq",
                                              "rounds_par"}));
    EXPECT_EQ(j["rounds_par"], 6);
}

TEST(emit, write_output_reports_path) {
    auto dir = std::filesystem::temp_directory_path() / "refalign_emit_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "out.csv").string();
    write_output(path, "abc\n");
    std::ifstream in(path);
    std::string s((std::istreambuf_iterator<char>(in)), {});
    EXPECT_EQ(s, "abc\n");
    try {
        write_output((dir / "missing" / "x.csv").string(), "x");
        FAIL();
    } catch (const std::runtime_error &e) {
        EXPECT_NE(std::string(e.what()).find("missing"), std::string::npos);
    }
    std::filesystem::remove_all(dir);
}
