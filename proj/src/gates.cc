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

#include "reqsim/gates.h"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace reqsim {

namespace {

GateStep step(Ion ion, StepLegs legs, double phi, const std::string &pulse, double extra) {
    return GateStep{ion, legs, phi, pulse, extra};
}

const char *ion_name(Ion ion) {
    return ion == Ion::kControl ? "control" : "target";
}

std::string legs_name(const GateStep &s) {
    char buf[64];
    switch (s.legs) {
        case StepLegs::kLeg0:
            return "0-e";
        case StepLegs::kLeg1:
            return "1-e";
        case StepLegs::kBright:
            std::snprintf(buf, sizeof(buf), "1bar-e(phi=%g)", s.basis_phi_deg);
            return buf;
        case StepLegs::kDark:
            std::snprintf(buf, sizeof(buf), "0bar-e(phi=%g)", s.basis_phi_deg);
            return buf;
    }
    return "?";
}

const char *intent_name(GateIntent intent) {
    switch (intent) {
        case GateIntent::kPhaseGate:
            return "phase";
        case GateIntent::kRotation:
            return "rotation";
        case GateIntent::kCnot:
            return "cnot";
    }
    return "?";
}

// Each step must conserve norm to the propagator's tolerance; the residual drift is projected out so
// that errors do not accumulate over long programs.
void renormalize_after_step(CVector &psi, size_t step) {
    double drift = std::abs(psi.squaredNorm() - 1.0);
    if (drift > kNormTolerance) {
        throw NumericalError("step " + std::to_string(step + 1) + " changed the norm by " + std::to_string(drift) +
                             "; tighten the integrator tolerance");
    }
    psi /= psi.norm();
}

// Qubit-subspace weight check shared by the unitary extractors.
void check_leakage(double qubit_population, double max_leakage, const std::string &which) {
    double leak = 1.0 - qubit_population;
    if (leak > max_leakage) {
        throw LeakageError("probe " + which + " left " + std::to_string(leak) +
                           " population outside the qubit space (failed pi-pulse)");
    }
}

}  // namespace

double GateProgram::duration() const {
    double total = 0.0;
    for (const auto &s : steps) {
        total += catalog_pulse(s.pulse).duration();
    }
    return total;
}

std::vector<double> GateProgram::step_starts() const {
    std::vector<double> out;
    double t = 0.0;
    for (const auto &s : steps) {
        out.push_back(t);
        t += catalog_pulse(s.pulse).duration();
    }
    return out;
}

GateProgram phase_gate_program(double theta_deg, double phi_deg, const std::string &pulse) {
    catalog_pulse(pulse);
    GateProgram p;
    p.intent = GateIntent::kPhaseGate;
    p.theta_deg = theta_deg;
    p.phi_deg = phi_deg;
    p.steps.push_back(step(Ion::kTarget, StepLegs::kBright, phi_deg, pulse, 0.0));
    p.steps.push_back(step(Ion::kTarget, StepLegs::kBright, phi_deg, pulse, 180.0 + theta_deg));
    return p;
}

GateProgram rotation_program(double theta_deg, double phi_deg, const std::string &pulse, bool compensate) {
    GateProgram p = phase_gate_program(theta_deg, phi_deg, pulse);
    p.intent = GateIntent::kRotation;
    if (compensate) {
        p.steps.push_back(step(Ion::kTarget, StepLegs::kDark, phi_deg, pulse, 0.0));
        p.steps.push_back(step(Ion::kTarget, StepLegs::kDark, phi_deg, pulse, 180.0));
    }
    return p;
}

GateProgram cnot_program(const std::string &pulse, double theta_deg, double phi_deg) {
    catalog_pulse(pulse);
    GateProgram p;
    p.intent = GateIntent::kCnot;
    p.theta_deg = theta_deg;
    p.phi_deg = phi_deg;
    auto &s = p.steps;
    s.push_back(step(Ion::kControl, StepLegs::kLeg0, 0.0, pulse, 0.0));
    s.push_back(step(Ion::kTarget, StepLegs::kBright, phi_deg, pulse, 0.0));
    s.push_back(step(Ion::kTarget, StepLegs::kBright, phi_deg, pulse, 180.0 + theta_deg));
    s.push_back(step(Ion::kTarget, StepLegs::kDark, phi_deg, pulse, 0.0));
    s.push_back(step(Ion::kTarget, StepLegs::kDark, phi_deg, pulse, 180.0));
    s.push_back(step(Ion::kControl, StepLegs::kLeg0, 0.0, pulse, 180.0));
    s.push_back(step(Ion::kControl, StepLegs::kLeg1, 0.0, pulse, 0.0));
    s.push_back(step(Ion::kTarget, StepLegs::kBright, phi_deg, pulse, 0.0));
    s.push_back(step(Ion::kTarget, StepLegs::kBright, phi_deg, pulse, 180.0));
    s.push_back(step(Ion::kTarget, StepLegs::kDark, phi_deg, pulse, 0.0));
    s.push_back(step(Ion::kTarget, StepLegs::kDark, phi_deg, pulse, 180.0));
    s.push_back(step(Ion::kControl, StepLegs::kLeg1, 0.0, pulse, 180.0));
    return p;
}

std::string to_listing(const GateProgram &program) {
    std::ostringstream out;
    char buf[256];
    std::string pulse = program.steps.empty() ? "none" : program.steps.front().pulse;
    std::snprintf(buf, sizeof(buf), "# gate=%s pulse=%s theta_deg=%g phi_deg=%g steps=%zu duration_us=%g\n",
                  intent_name(program.intent), pulse.c_str(), program.theta_deg, program.phi_deg,
                  program.steps.size(), program.duration());
    out << buf;
    for (size_t k = 0; k < program.steps.size(); k++) {
        const auto &s = program.steps[k];
        std::snprintf(buf, sizeof(buf), "%zu %s %s %s %g\n", k + 1, ion_name(s.ion), legs_name(s).c_str(),
                      s.pulse.c_str(), s.extra_phase_deg);
        out << buf;
    }
    return out.str();
}

Drive step_drive(const GateStep &step, UnitConvention units) {
    Drive d{step.ion, with_units(catalog_pulse(step.pulse), units).with_extra_phase(step.extra_phase_deg)};
    switch (step.legs) {
        case StepLegs::kLeg0:
            d.legs = Legs::kLeg0;
            break;
        case StepLegs::kLeg1:
            d.legs = Legs::kLeg1;
            break;
        case StepLegs::kBright:
            d.legs = Legs::kBoth;
            std::tie(d.phase0_deg, d.phase1_deg) = bright_transition_phases(step.basis_phi_deg);
            d.leg_scale = kTwoLegScale;
            break;
        case StepLegs::kDark:
            d.legs = Legs::kBoth;
            std::tie(d.phase0_deg, d.phase1_deg) = dark_transition_phases(step.basis_phi_deg);
            d.leg_scale = kTwoLegScale;
            break;
    }
    return d;
}

StateVector execute_single_ion(const GateProgram &program,
                               const StateVector &initial,
                               double detuning_mhz,
                               const IntegratorConfig &cfg,
                               UnitConvention units) {
    if (initial.dim() != 3) {
        throw std::invalid_argument("single-ion programs act on the three-level basis (0, 1, e)");
    }
    CVector psi = initial.amplitudes();
    for (size_t k = 0; k < program.steps.size(); k++) {
        const auto &s = program.steps[k];
        if (s.ion != program.steps.front().ion) {
            throw std::invalid_argument("single-ion execution requires every step to address the same ion");
        }
        Drive d = step_drive(s, units);
        LambdaModel model{detuning_mhz, d.pulse, d.legs, d.phase0_deg, d.phase1_deg, d.leg_scale, units};
        propagate_in_place(psi, build_lambda(model), d.pulse.t_start(), d.pulse.t_end(), cfg);
        renormalize_after_step(psi, k);
    }
    return StateVector(std::move(psi), initial.labels());
}

StateVector execute_two_ion(const GateProgram &program,
                            const StateVector &initial,
                            const TwoIonParams &params,
                            const IntegratorConfig &cfg,
                            const StepObserver &observer) {
    if (initial.dim() != 9) {
        throw std::invalid_argument("two-ion programs act on the nine-state basis");
    }
    CVector psi = initial.amplitudes();
    for (size_t k = 0; k < program.steps.size(); k++) {
        TwoIonModel model{params.control_detuning_mhz, params.target_detuning_mhz, params.dipole_shift_mhz,
                          step_drive(program.steps[k], params.units), params.units};
        const auto &pulse = model.drive.pulse;
        propagate_in_place(psi, build_two_ion(model), pulse.t_start(), pulse.t_end(), cfg);
        renormalize_after_step(psi, k);
        if (observer) {
            observer(k, psi);
        }
    }
    return StateVector(std::move(psi), initial.labels());
}

CMatrix normalize_global_phase(const CMatrix &m) {
    Eigen::Index row = 0;
    m.col(0).cwiseAbs().maxCoeff(&row);
    Complex z = m(row, 0);
    if (std::abs(z) == 0.0) {
        return m;
    }
    return m * (std::conj(z) / std::abs(z));
}

CMatrix extract_qubit_unitary(const GateProgram &program,
                              double detuning_mhz,
                              const IntegratorConfig &cfg,
                              double max_leakage) {
    CMatrix u(2, 2);
    for (int col = 0; col < 2; col++) {
        auto in = StateVector::basis(lambda_labels(), col == 0 ? "0" : "1");
        auto out = execute_single_ion(program, in, detuning_mhz, cfg);
        const auto &a = out.amplitudes();
        check_leakage(std::norm(a[0]) + std::norm(a[1]), max_leakage, in.labels()[col]);
        u(0, col) = a[0];
        u(1, col) = a[1];
    }
    return normalize_global_phase(u);
}

CMatrix extract_two_qubit_unitary(const GateProgram &program,
                                  const TwoIonParams &params,
                                  const IntegratorConfig &cfg,
                                  double max_leakage) {
    static const std::array<int, 4> qubit_index{two_ion_index(0, 0), two_ion_index(0, 1), two_ion_index(1, 0),
                                                two_ion_index(1, 1)};
    CMatrix u(4, 4);
    for (int col = 0; col < 4; col++) {
        const auto &label = two_ion_labels()[qubit_index[col]];
        auto out = execute_two_ion(program, StateVector::basis(two_ion_labels(), label), params, cfg);
        double weight = 0.0;
        for (int row = 0; row < 4; row++) {
            u(row, col) = out.amplitudes()[qubit_index[row]];
            weight += std::norm(u(row, col));
        }
        check_leakage(weight, max_leakage, label);
    }
    return normalize_global_phase(u);
}

Eigen::Matrix2cd ideal_rotation(double theta_deg, double phi_deg) {
    const Complex i(0.0, 1.0);
    double half = 0.5 * deg_to_rad(theta_deg);
    double phi = deg_to_rad(phi_deg);
    Eigen::Matrix2cd u;
    u << std::cos(half), i * std::polar(1.0, phi) * std::sin(half), i * std::polar(1.0, -phi) * std::sin(half),
        std::cos(half);
    return std::polar(1.0, half) * u;
}

}  // namespace reqsim
