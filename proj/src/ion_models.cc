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

#include "reqsim/ion_models.h"

#include <array>
#include <cmath>

namespace reqsim {

namespace {

// Leg coupling factors scale * e^{-i phase_k} / 2; zero for undriven legs.
std::array<Complex, 2> leg_factors(Legs legs, double phase0_deg, double phase1_deg, double scale) {
    std::array<Complex, 2> f{0.0, 0.0};
    if (legs != Legs::kLeg1) {
        f[0] = 0.5 * scale * std::polar(1.0, -deg_to_rad(phase0_deg));
    }
    if (legs != Legs::kLeg0) {
        f[1] = 0.5 * scale * std::polar(1.0, -deg_to_rad(phase1_deg));
    }
    return f;
}

}  // namespace

HamiltonianFn build_two_level(const TwoLevelModel &model) {
    double diag = -mhz_to_rad_per_us(model.detuning_mhz, model.units);
    PulseSpec pulse = model.pulse;
    return HamiltonianFn(
        2,
        [pulse, diag](double t, CMatrix &h) {
            Complex half = 0.5 * rabi_at(pulse, t);
            h(0, 0) = 0.0;
            h(0, 1) = std::conj(half);
            h(1, 0) = half;
            h(1, 1) = diag;
        },
        pulse.breakpoints());
}

HamiltonianFn build_lambda(const LambdaModel &model) {
    double diag = -mhz_to_rad_per_us(model.detuning_mhz, model.units);
    auto f = leg_factors(model.legs, model.phase0_deg, model.phase1_deg, model.leg_scale);
    PulseSpec pulse = model.pulse;
    return HamiltonianFn(
        3,
        [pulse, diag, f](double t, CMatrix &h) {
            Complex omega = rabi_at(pulse, t);
            h.setZero();
            for (int k = 0; k < 2; k++) {
                Complex c = f[k] * omega;
                h(2, k) = c;
                h(k, 2) = std::conj(c);
            }
            h(2, 2) = diag;
        },
        pulse.breakpoints());
}

HamiltonianFn build_two_ion(const TwoIonModel &model) {
    double dc = -mhz_to_rad_per_us(model.control_detuning_mhz, model.units);
    double dt = -mhz_to_rad_per_us(model.target_detuning_mhz, model.units);
    double dip = mhz_to_rad_per_us(model.dipole_shift_mhz, model.units);

    std::array<double, 9> diag{};
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            double d = 0.0;
            if (a == 2) {
                d += dc;
            }
            if (b == 2) {
                d += dt;
            }
            if (a == 2 && b == 2) {
                d += dip;
            }
            diag[two_ion_index(a, b)] = d;
        }
    }

    const Drive &drive = model.drive;
    auto f = leg_factors(drive.legs, drive.phase0_deg, drive.phase1_deg, drive.leg_scale);
    bool on_control = drive.ion == Ion::kControl;
    PulseSpec pulse = drive.pulse;
    return HamiltonianFn(
        9,
        [pulse, diag, f, on_control](double t, CMatrix &h) {
            h.setZero();
            for (int k = 0; k < 9; k++) {
                h(k, k) = diag[k];
            }
            Complex omega = rabi_at(pulse, t);
            if (omega == Complex(0.0)) {
                return;
            }
            for (int leg = 0; leg < 2; leg++) {
                Complex c = f[leg] * omega;
                if (c == Complex(0.0)) {
                    continue;
                }
                for (int other = 0; other < 3; other++) {
                    int ground = on_control ? two_ion_index(leg, other) : two_ion_index(other, leg);
                    int excited = on_control ? two_ion_index(2, other) : two_ion_index(other, 2);
                    h(excited, ground) = c;
                    h(ground, excited) = std::conj(c);
                }
            }
        },
        pulse.breakpoints());
}

DarkBrightBasis dark_bright(double phi_deg) {
    const double s = 1.0 / std::sqrt(2.0);
    Complex rot = std::polar(1.0, -deg_to_rad(phi_deg));
    DarkBrightBasis out{phi_deg, {}, {}};
    out.zero_bar << s, -s * rot;
    out.one_bar << s, s * rot;
    return out;
}

std::pair<double, double> bright_transition_phases(double phi_deg) {
    return {0.0, -phi_deg};
}

std::pair<double, double> dark_transition_phases(double phi_deg) {
    return {0.0, 180.0 - phi_deg};
}

}  // namespace reqsim
