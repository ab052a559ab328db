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

#ifndef REQSIM_ION_MODELS_H
#define REQSIM_ION_MODELS_H

#include <utility>

#include "reqsim/dynamics.h"
#include "reqsim/pulses.h"

namespace reqsim {

/// A single driven transition, basis (g, e).
///
/// H = [[0, conj(Omega)/2], [Omega/2, -2 pi Delta]] in the frame rotating at the laser carrier,
/// with Delta = laser minus ion frequency.
struct TwoLevelModel {
    double detuning_mhz = 0.0;
    PulseSpec pulse;
    UnitConvention units = UnitConvention::kCyclic;
};

/// Which ground levels of a Lambda ion a field couples to |e>.
enum class Legs {
    kLeg0,
    kLeg1,
    kBoth,
};

/// Three-level ion, basis (0, 1, e). Leg k carries leg_scale * Omega(t) * exp(-i phase_k).
///
/// Both legs share one envelope object, so the equal-amplitude premise of the dark/bright
/// construction holds by construction.
struct LambdaModel {
    double detuning_mhz = 0.0;
    PulseSpec pulse;
    Legs legs = Legs::kBoth;
    double phase0_deg = 0.0;
    double phase1_deg = 0.0;
    double leg_scale = 1.0;
    UnitConvention units = UnitConvention::kCyclic;
};

enum class Ion {
    kControl,
    kTarget,
};

/// The field applied during one program step: one ion, one or both legs.
struct Drive {
    Ion ion;
    PulseSpec pulse;
    Legs legs = Legs::kBoth;
    double phase0_deg = 0.0;
    double phase1_deg = 0.0;
    double leg_scale = 1.0;
};

/// Two ions over the nine states |a b>, a = control level, b = target level, a, b in {0, 1, e}.
/// Each ion's excited level carries its own detuning; |e e> is further shifted by +2 pi Delta_dip.
struct TwoIonModel {
    double control_detuning_mhz = 0.0;
    double target_detuning_mhz = 0.0;
    double dipole_shift_mhz = 15.0;
    Drive drive;
    UnitConvention units = UnitConvention::kCyclic;
};

HamiltonianFn build_two_level(const TwoLevelModel &model);
HamiltonianFn build_lambda(const LambdaModel &model);
HamiltonianFn build_two_ion(const TwoIonModel &model);

/// Index of |a b> in two_ion_labels(); levels are 0, 1, 2 (= e).
inline int two_ion_index(int control_level, int target_level) {
    return 3 * control_level + target_level;
}

/// |0bar> = (|0> - e^{-i phi}|1>)/sqrt2 and |1bar> = (|0> + e^{-i phi}|1>)/sqrt2 over (|0>, |1>).
struct DarkBrightBasis {
    double phi_deg;
    Eigen::Vector2cd zero_bar;
    Eigen::Vector2cd one_bar;
};

DarkBrightBasis dark_bright(double phi_deg);

/// Leg phases (phase0, phase1) that leave |0bar> dark and couple |1bar> to |e>.
///
/// With the leg coupling <e|H|k> = Omega e^{-i phase_k}/2, the dark condition for |0bar> is
/// phase1 - phase0 = -phi.
std::pair<double, double> bright_transition_phases(double phi_deg);

/// Leg phases that leave |1bar> dark and couple |0bar> to |e>: phase1 - phase0 = 180 - phi.
std::pair<double, double> dark_transition_phases(double phi_deg);

/// Per-leg amplitude that makes the coupled superposition see exactly the catalog pulse.
inline constexpr double kTwoLegScale = 0.70710678118654752440;

}  // namespace reqsim

#endif  // REQSIM_ION_MODELS_H
