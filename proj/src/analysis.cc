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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "refalign/parallel.h"
#include "refalign/rng.h"

namespace refalign {

namespace {

constexpr int kRandomFrames = 16;

/// Frame whose target u = M^-1 z has the given polar angle and azimuth, using
/// u = (-sin t cos p, sin t sin p, cos t).
EulerAngles frame_for_target(const Vec3 &u) {
    double theta = std::acos(std::clamp(u[2], -1.0, 1.0));
    double phi = std::atan2(u[1], -u[0]);
    return EulerAngles::canonical(phi, theta, 0);
}

}  // namespace

double fidelity_bound(int k, double epsilon) {
    return fidelity_bound_with_constant(k, epsilon, 2 * M_PI * M_PI);
}

double fidelity_bound_with_constant(int k, double epsilon, double c) {
    if (k < 1) {
        throw std::invalid_argument("fidelity_bound: k must be at least 1");
    }
    if (!(epsilon >= 0 && epsilon <= 1)) {
        throw std::invalid_argument("fidelity_bound: epsilon must lie in [0, 1]");
    }
    return (1 - epsilon) * (1 - epsilon) * (1 - c * std::ldexp(1.0, -2 * k));
}

double measured_constant(int k, double epsilon, double f) {
    double scale = (1 - epsilon) * (1 - epsilon);
    return std::max(0.0, (1 - f / scale) * std::ldexp(1.0, 2 * k));
}

std::vector<GridFrame> adversarial_grid(int k, uint64_t seed) {
    if (k < 1) {
        throw std::invalid_argument("adversarial_grid: k must be at least 1");
    }
    std::vector<GridFrame> grid;
    grid.push_back({"identity", EulerAngles(0, 0, 0)});
    auto add_t = [&](const std::string &label, double t) {
        grid.push_back({label, EulerAngles::canonical(0.7, t * M_PI, 1.9)});
    };
    add_t("T=2^-k", std::ldexp(1.0, -k));
    add_t("T=1/4", 0.25);
    add_t("T=1/2", 0.5);
    add_t("T=3/4", 0.75);
    add_t("T=1/2-2^-(k+2)", 0.5 - std::ldexp(1.0, -(k + 2)));
    add_t("T=1/2+2^-(k+2)", 0.5 + std::ldexp(1.0, -(k + 2)));
    add_t("T=1/3", 1.0 / 3);
    add_t("T=frac(1/sqrt2)", 1 / std::sqrt(2.0));

    const double small = std::ldexp(1.0, -(k + 1));
    const double rest = std::sqrt(1 - small * small);
    const double d = rest / std::sqrt(2.0);
    grid.push_back({"u_z=2^-(k+1)", frame_for_target({d, d, small})});
    grid.push_back({"u_z=-2^-(k+1)", frame_for_target({-d, d, -small})});
    grid.push_back({"u_x=2^-(k+1)", frame_for_target({small, d, d})});
    grid.push_back({"u_y=2^-(k+1)", frame_for_target({d, small, -d})});

    RngStream rng(seed, stream_index(static_cast<uint64_t>(k), "adversarial-grid"));
    for (int i = 0; i < kRandomFrames; i++) {
        grid.push_back({"random-" + std::to_string(i), random_frame(rng)});
    }
    return grid;
}

std::vector<SweepRow> scaling_sweep(int k_lo, int k_hi, uint64_t trials, uint64_t seed) {
    if (k_lo < 1 || k_hi < k_lo || k_hi > 16) {
        throw std::invalid_argument("scaling_sweep: need 1 <= k_lo <= k_hi <= 16");
    }
    if (trials < 1) {
        throw std::invalid_argument("scaling_sweep: trials must be at least 1");
    }
    struct Run {
        bool ok = false;
        double fidelity = 0;
        uint64_t oneway = 0;
        std::string error;
    };

    std::vector<SweepRow> rows;
    for (int k = k_lo; k <= k_hi; k++) {
        SweepRow row;
        row.k = k;
        row.epsilon = std::ldexp(1.0, -2 * k);
        row.n_stage = chernoff_n(0.25, row.epsilon / 7 / (k + 1));
        row.roundtrips_formula = 6 * row.n_stage * ((uint64_t{1} << k) - 1);
        row.trials = trials;
        row.seed = seed;
        row.f_bound_paper = fidelity_bound(k, row.epsilon);

        const std::vector<GridFrame> grid = adversarial_grid(k, seed);
        const RngStream base(seed, stream_index(static_cast<uint64_t>(k), "sweep"));
        auto runs = run_trials(grid.size() * trials, [&](size_t i) {
            Run r;
            try {
                Session session(grid[i / trials].angles, seed);
                RngStream rng = base.derive(i, "trial");
                DirectionEstimate d = find_direction(session, k, row.epsilon, rng);
                r.ok = true;
                r.fidelity = d.report.fidelity;
                r.oneway = d.report.ledger.oneway_qubits();
            } catch (const std::exception &e) {
                r.error = e.what();
            }
            return r;
        });

        double total = 0;
        uint64_t ok = 0;
        row.f_min = std::numeric_limits<double>::quiet_NaN();
        for (size_t f = 0; f < grid.size(); f++) {
            double sum = 0;
            uint64_t count = 0;
            for (uint64_t t = 0; t < trials; t++) {
                const Run &r = runs[f * trials + t];
                if (!r.ok) {
                    if (row.failed++ == 0) {
                        row.error = r.error;
                    }
                    continue;
                }
                if (row.oneway_qubits == 0) {
                    row.oneway_qubits = r.oneway;
                }
                sum += r.fidelity;
                count++;
            }
            if (count == 0) {
                continue;
            }
            double mean = sum / static_cast<double>(count);
            if (std::isnan(row.f_min) || mean < row.f_min) {
                row.f_min = mean;
                row.worst_frame = grid[f].label;
            }
            total += sum;
            ok += count;
        }
        row.f_mean = ok > 0 ? total / static_cast<double>(ok) : std::numeric_limits<double>::quiet_NaN();
        row.c_measured = measured_constant(k, row.epsilon, row.f_min);
        rows.push_back(row);
    }
    return rows;
}

SlopeFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit_line: size mismatch");
    }
    SlopeFit fit;
    fit.points = x.size();
    if (x.size() < 2) {
        fit.slope = std::numeric_limits<double>::quiet_NaN();
        fit.intercept = std::numeric_limits<double>::quiet_NaN();
        return fit;
    }
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); i++) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); i++) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

SlopeFit sweep_slope(const std::vector<SweepRow> &rows, bool oneway) {
    std::vector<double> x, y;
    for (const SweepRow &r : rows) {
        if (!(r.f_min < 1)) {
            continue;
        }
        double n = static_cast<double>(oneway ? r.oneway_qubits : r.roundtrips_formula);
        x.push_back(std::log2(n));
        y.push_back(std::log2(1 - r.f_min));
    }
    return fit_line(x, y);
}

}  // namespace refalign
