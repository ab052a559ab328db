// Copyright 2026 The reqsim Authors
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

#ifndef REQSIM_OPTIMIZER_H
#define REQSIM_OPTIMIZER_H

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "reqsim/dynamics.h"
#include "reqsim/pulses.h"

namespace reqsim {

/// Areas and phases (degrees) of a three-Gaussian composite: theta1, phi1, theta2, phi2, theta3, phi3.
using CompositeParams = std::array<double, 6>;

/// Detuning-tolerance objective for a three-Gaussian composite pi-pulse.
///
/// score = resonance_weight * (1 - P_e(0))
///       + in_band_weight * mean_{D in band} (1 - P_e(D))
///       + out_band_weight * mean_{D out of band} P_e(D)
struct ObjectiveSpec {
    std::vector<double> in_band_mhz{-0.5, -0.25, -0.1, 0.1, 0.25, 0.5};
    std::vector<double> out_band_mhz{-10.0, -7.0, -5.0, 5.0, 7.0, 10.0};
    double resonance_weight = 1.0;
    double in_band_weight = 1.0;
    double out_band_weight = 0.5;
    double total_duration_us = kCompositeDurationUs;
    double cutoff_multiple = 3.5;
    IntegratorConfig integrator;

    void validate() const;
};

/// Composite built from params; negative areas are read as |theta| with phase + 180.
PulseSpec composite_from_params(const CompositeParams &params, const ObjectiveSpec &spec);

double objective(const CompositeParams &params, const ObjectiveSpec &spec);

struct OptimizerConfig {
    int max_evaluations = 3000;
    /// Simplex converges when best and worst vertex scores differ by less than this.
    double tolerance = 1e-9;
    std::array<AreaPhase, 3> initial_guess{{{90, 90}, {180, 0}, {90, 90}}};
    /// Size of the initial simplex edges (degrees).
    double initial_step_deg = 10.0;
    /// Extra simplex runs seeded around the incumbent.
    int restarts = 5;
    std::uint64_t seed = 1;

    void validate() const;
};

struct TracePoint {
    int evaluation;
    double best_score;
    CompositeParams params;
};

struct OptimizerResult {
    /// Areas non-negative, phases reduced to [0, 360).
    CompositeParams params;
    double score;
    int evaluations;
    /// False when the budget ran out before the last simplex converged.
    bool converged;
    /// One entry per improvement of the best score.
    std::vector<TracePoint> trace;
};

OptimizerResult optimize(const OptimizerConfig &cfg, const ObjectiveSpec &spec);

/// Plain Nelder-Mead minimizer over R^n.
struct SimplexResult {
    std::vector<double> x;
    double value;
    int evaluations;
    bool converged;
};

SimplexResult nelder_mead(const std::function<double(const std::vector<double> &)> &fn,
                          std::vector<std::vector<double>> simplex,
                          int max_evaluations,
                          double tolerance);

CompositeParams to_params(const std::array<AreaPhase, 3> &sequence);

/// Canonical form: non-negative areas, phases in [0, 360).
CompositeParams canonical_params(const CompositeParams &params);

}  // namespace reqsim

#endif  // REQSIM_OPTIMIZER_H
