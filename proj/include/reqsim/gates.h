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

#ifndef REQSIM_GATES_H
#define REQSIM_GATES_H

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reqsim/dynamics.h"
#include "reqsim/ion_models.h"

namespace reqsim {

/// Transition addressed by one step.
enum class StepLegs {
    kLeg0,    // |0> <-> |e>
    kLeg1,    // |1> <-> |e>
    kBright,  // |1bar> <-> |e>, both legs, |0bar> dark
    kDark,    // |0bar> <-> |e>, both legs, |1bar> dark
};

struct GateStep {
    Ion ion = Ion::kTarget;
    StepLegs legs = StepLegs::kBright;
    /// Superposition phase phi of the dark/bright basis; unused for single-leg steps.
    double basis_phi_deg = 0.0;
    std::string pulse;
    double extra_phase_deg = 0.0;
};

enum class GateIntent {
    kPhaseGate,
    kRotation,
    kCnot,
};

struct GateProgram {
    GateIntent intent = GateIntent::kRotation;
    double theta_deg = 0.0;
    double phi_deg = 0.0;
    std::vector<GateStep> steps;

    /// Gapless concatenation of step durations (us).
    double duration() const;
    /// Start time of every step (us).
    std::vector<double> step_starts() const;
};

/// Bright-transition pi-pulse followed by the same pulse with extra phase 180 + theta:
/// |1bar> -> e^{i theta}|1bar>, |0bar> untouched.
GateProgram phase_gate_program(double theta_deg, double phi_deg, const std::string &pulse);

/// The qubit rotation U(theta, phi); with `compensate`, a pulse + inverse pair on |0bar> <-> |e>
/// equalizes the detuning-dependent phase of the two qubit states.
GateProgram rotation_program(double theta_deg, double phi_deg, const std::string &pulse, bool compensate = true);

/// Twelve-step phase-compensated C-NOT (control = ion i, target = ion j). `theta_deg` sets the
/// phase of step 3; 180 with phi = 180 gives the C-NOT, other values a controlled U(theta, phi).
GateProgram cnot_program(const std::string &pulse, double theta_deg = 180.0, double phi_deg = 180.0);

/// Line-oriented listing: a '#' header, then "index ion legs pulse extra_phase_deg" per step.
std::string to_listing(const GateProgram &program);

/// The field a step applies, resolved against the pulse catalog.
Drive step_drive(const GateStep &step, UnitConvention units = UnitConvention::kCyclic);

struct TwoIonParams {
    double control_detuning_mhz = 0.0;
    double target_detuning_mhz = 0.0;
    double dipole_shift_mhz = 15.0;
    UnitConvention units = UnitConvention::kCyclic;
};

/// Called after each step with the 0-based step index and the current state.
using StepObserver = std::function<void(size_t step, const CVector &state)>;

/// Runs a program on one three-level ion (basis 0, 1, e). All steps must address the same ion.
StateVector execute_single_ion(const GateProgram &program,
                               const StateVector &initial,
                               double detuning_mhz,
                               const IntegratorConfig &cfg = {},
                               UnitConvention units = UnitConvention::kCyclic);

/// Runs a program on the nine-state two-ion model.
StateVector execute_two_ion(const GateProgram &program,
                            const StateVector &initial,
                            const TwoIonParams &params,
                            const IntegratorConfig &cfg = {},
                            const StepObserver &observer = {});

struct LeakageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Multiplies by a global phase so the largest-magnitude entry of column 0 is real positive.
CMatrix normalize_global_phase(const CMatrix &m);

/// Qubit-space map of a single-ion program: columns are the propagated |0>, |1>, phase-normalized.
/// Throws LeakageError if a probed state ends with more than `max_leakage` in |e>.
CMatrix extract_qubit_unitary(const GateProgram &program,
                              double detuning_mhz,
                              const IntegratorConfig &cfg = {},
                              double max_leakage = 1e-4);

/// 4x4 map over |00>, |01>, |10>, |11> (control first) of a two-ion program.
CMatrix extract_two_qubit_unitary(const GateProgram &program,
                                  const TwoIonParams &params,
                                  const IntegratorConfig &cfg = {},
                                  double max_leakage = 1e-4);

/// U(theta, phi) = e^{i theta/2} [[cos(theta/2), i e^{i phi} sin(theta/2)],
///                                [i e^{-i phi} sin(theta/2), cos(theta/2)]].
Eigen::Matrix2cd ideal_rotation(double theta_deg, double phi_deg);

}  // namespace reqsim

#endif  // REQSIM_GATES_H
