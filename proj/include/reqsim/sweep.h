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

#ifndef REQSIM_SWEEP_H
#define REQSIM_SWEEP_H

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "reqsim/gates.h"

namespace reqsim {

struct DetuningGrid {
    double min_mhz = -10.0;
    double max_mhz = 10.0;
    int count = 401;

    /// Throws std::invalid_argument unless count >= 2 and min < max.
    void validate() const;
    std::vector<double> points() const;
};

enum class SweepKind {
    kSinglePulse,
    kCnot1d,
    kCnot2d,
};

struct SweepSpec {
    SweepKind kind = SweepKind::kCnot1d;
    /// Common axis for 1D runs and the single-pulse profile; control axis for 2D.
    DetuningGrid grid{-10.0, 10.0, 201};
    /// Target axis for 2D runs.
    DetuningGrid target_grid{-0.5, 0.5, 21};
    std::string pulse = "sech-default";
    /// Qubit amplitudes over |00>, |01>, |10>, |11>; normalized on use.
    Eigen::Vector4cd initial = default_initial_qubits();
    double dipole_shift_mhz = 15.0;
    UnitConvention units = UnitConvention::kCyclic;
    IntegratorConfig integrator;
    /// 0 means one worker per hardware thread.
    int workers = 0;

    /// sqrt(0.1)|00> + sqrt(0.2)|01> + sqrt(0.3)|10> + sqrt(0.4)|11>.
    static Eigen::Vector4cd default_initial_qubits();
};

inline const std::vector<std::string> &qubit_labels() {
    static const std::vector<std::string> labels{"00", "01", "10", "11"};
    return labels;
}

struct SweepPoint {
    double detuning_mhz = 0.0;         // common / control detuning
    double target_detuning_mhz = 0.0;  // equals detuning_mhz except for 2D runs
    /// Single-pulse runs: {g, e}. C-NOT runs: the four qubit labels.
    std::map<std::string, double> populations;
    /// C-NOT runs: phases of 01, 10, 11 relative to 00 (degrees); NaN where undefined.
    std::map<std::string, double> phases_deg;
    /// C-NOT runs: |population - ideal C-NOT population| per qubit label.
    std::map<std::string, double> deviations;
    /// C-NOT runs: total population in states with either ion in |e>.
    double leakage = 0.0;
};

struct SweepResult {
    SweepKind kind = SweepKind::kSinglePulse;
    std::string pulse;
    /// Sorted by (detuning, target detuning).
    std::vector<SweepPoint> points;
};

/// Runs fn(i) for i in [0, n) on up to `workers` threads (0 = hardware concurrency).
void parallel_for(size_t n, int workers, const std::function<void(size_t)> &fn);

/// Excited population after one pulse on a two-level ion starting in |g>, per detuning.
SweepResult excitation_profile(const std::string &pulse,
                               const DetuningGrid &grid,
                               const IntegratorConfig &cfg = {},
                               int workers = 0,
                               UnitConvention units = UnitConvention::kCyclic);

SweepResult excitation_profile(const PulseSpec &pulse,
                               const DetuningGrid &grid,
                               const IntegratorConfig &cfg = {},
                               int workers = 0,
                               UnitConvention units = UnitConvention::kCyclic);

/// Runs the C-NOT program at every grid point.
SweepResult cnot_sweep(const SweepSpec &spec);

/// Ideal C-NOT output: amplitudes of |10> and |11> exchanged.
Eigen::Vector4cd ideal_cnot(const Eigen::Vector4cd &input);

/// Target distribution for deviation_metrics; phases are optional.
struct IdealQubitState {
    std::map<std::string, double> populations;
    std::optional<std::map<std::string, double>> phases_deg;

    /// Populations and phases (relative to |00>) of a qubit state vector.
    static IdealQubitState from_amplitudes(const Eigen::Vector4cd &amplitudes);
};

struct RegionStats {
    int points = 0;
    double max_deviation = 0.0;
    double mean_deviation = 0.0;
    /// Absent when no ideal phases were supplied or no phase was defined.
    std::optional<double> max_phase_error_deg;
};

struct DeviationSummary {
    RegionStats all;
    /// Points with every detuning inside |D| <= 0.5 MHz.
    std::optional<RegionStats> in_channel;
    /// Points with every detuning at |D| >= 5 MHz.
    std::optional<RegionStats> outside_hole;
};

inline constexpr double kChannelHalfWidthMhz = 0.5;
inline constexpr double kHoleHalfWidthMhz = 5.0;

/// Aggregates |population - ideal| and wrapped phase errors over a C-NOT sweep.
DeviationSummary deviation_metrics(const SweepResult &result, const IdealQubitState &ideal);

struct BlochSample {
    double t_us;
    double x;
    double y;
    double z;
};

/// Bloch vector (z = P_e - P_g, south pole = |g>) at `samples` uniformly spaced times over the pulse.
std::vector<BlochSample> bloch_trajectory(const std::string &pulse,
                                          double detuning_mhz,
                                          int samples,
                                          const IntegratorConfig &cfg = {},
                                          UnitConvention units = UnitConvention::kCyclic);
std::vector<BlochSample> bloch_trajectory(const PulseSpec &pulse,
                                          double detuning_mhz,
                                          int samples,
                                          const IntegratorConfig &cfg = {},
                                          UnitConvention units = UnitConvention::kCyclic);

/// CSV writers; floats use 12 significant digits.
void write_profile_csv(std::ostream &out, const SweepResult &result);
void write_cnot_csv(std::ostream &out, const SweepResult &result);
void write_bloch_csv(std::ostream &out, const std::vector<BlochSample> &samples);

/// Formats a double with 12 significant digits ("nan" for NaN).
std::string format_number(double value);

}  // namespace reqsim

#endif  // REQSIM_SWEEP_H
