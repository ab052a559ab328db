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

// Acceptance checks for the simulator. Prints one PASS/FAIL line per check and exits non-zero
// if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "reqsim/gates.h"
#include "reqsim/optimizer.h"
#include "reqsim/sweep.h"

using namespace reqsim;

namespace {

int failures = 0;

void report(const char *id, bool pass, const std::string &detail) {
    std::printf("%s %s %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) {
        failures++;
    }
}

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), format, args...);
    return buf;
}

class Stopwatch {
   public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

   private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double excitation(const PulseSpec &pulse, double detuning, const IntegratorConfig &cfg = {}) {
    CVector psi = StateVector::basis(two_level_labels(), "g").amplitudes();
    propagate_in_place(psi, build_two_level({detuning, pulse}), pulse.t_start(), pulse.t_end(), cfg);
    return std::norm(psi[1]);
}

void check_sech_profile() {
    Stopwatch clock;
    auto profile = excitation_profile("sech-default", {-10.0, 10.0, 401}, {}, 1);
    double seconds = clock.seconds();
    double in_band = 1.0, out_band = 0.0;
    for (const auto &p : profile.points) {
        double pe = p.populations.at("e");
        if (std::abs(p.detuning_mhz) <= 0.5 + 1e-12) {
            in_band = std::min(in_band, pe);
        }
        if (std::abs(p.detuning_mhz) >= 5.0 - 1e-12) {
            out_band = std::max(out_band, pe);
        }
    }
    report("A1", in_band >= 0.995 && out_band <= 0.005 && seconds < 5.0,
           fmt("sech profile, 401 points: min P_e(|D|<=0.5) = %.6f (>= 0.995), max P_e(|D|>=5) = %.3g (<= 0.005), "
               "%.2f s sequential (< 5 s)",
               in_band, out_band, seconds));
}

void check_optimized_composite() {
    auto grid = DetuningGrid{-10.0, 10.0, 401}.points();
    auto worst_in_band = [&](const PulseSpec &pulse) {
        double worst = 0.0;
        for (double d : grid) {
            if (std::abs(d) <= 0.5 + 1e-12) {
                worst = std::max(worst, 1.0 - excitation(pulse, d));
            }
        }
        return worst;
    };
    const auto &opt = catalog_pulse("gauss-opt");
    double resonance = excitation(opt, 0.0);
    double out_band = 0.0, at = 0.0;
    for (double d : grid) {
        if (std::abs(d) >= 5.0 - 1e-12) {
            double pe = excitation(opt, d);
            if (pe > out_band) {
                out_band = pe;
                at = d;
            }
        }
    }
    double opt_err = worst_in_band(opt);
    double naive_err = worst_in_band(catalog_pulse("gauss-naive"));
    report("A2", resonance >= 0.9999 && out_band <= 0.01 && opt_err < naive_err,
           fmt("optimized Gaussian composite: P_e(0) = %.8f (>= 0.9999), max P_e(|D|>=5) = %.7f at %+g MHz (<= 0.01), "
               "worst in-band error %.5f vs naive %.5f (must be lower)",
               resonance, out_band, at, opt_err, naive_err));
}

void check_cnot_on_resonance() {
    Eigen::Vector4cd initial = SweepSpec::default_initial_qubits();
    const double expected[4] = {0.1, 0.2, 0.4, 0.3};
    bool pass = true;
    std::string detail = "C-NOT at D_c = D_t = 0:";
    for (const char *pulse : {"gauss-opt", "sech-default"}) {
        CVector psi = CVector::Zero(9);
        for (int k = 0; k < 4; k++) {
            psi[two_ion_index(k / 2, k % 2)] = initial[k];
        }
        auto out = execute_two_ion(cnot_program(pulse), StateVector(psi, two_ion_labels()), {},
                                   IntegratorConfig::adaptive(1e-12, 1e-14));
        double dev = 0.0, qubit = 0.0;
        for (int k = 0; k < 4; k++) {
            double pop = std::norm(out.amplitudes()[two_ion_index(k / 2, k % 2)]);
            qubit += pop;
            dev = std::max(dev, std::abs(pop - expected[k]));
        }
        double leak = 1.0 - qubit;
        pass = pass && dev <= 1e-3 && leak <= 1e-3;
        detail += fmt(" %s max |dP| = %.2e, leakage = %.2e;", pulse, dev, leak);
    }
    report("A3", pass, detail + " limits 1e-3 each");
}

void check_channel_grid() {
    Eigen::Vector4cd initial = SweepSpec::default_initial_qubits();
    auto ideal = IdealQubitState::from_amplitudes(ideal_cnot(initial));
    bool pass = true;
    std::string detail = "21x21 grid over +-0.5 MHz:";
    for (auto [pulse, limit] : {std::pair{"sech-default", 2e-3}, std::pair{"gauss-opt", 3e-2}}) {
        SweepSpec spec;
        spec.kind = SweepKind::kCnot2d;
        spec.pulse = pulse;
        spec.grid = {-0.5, 0.5, 21};
        spec.target_grid = {-0.5, 0.5, 21};
        Stopwatch clock;
        auto result = cnot_sweep(spec);
        double seconds = clock.seconds();
        auto summary = deviation_metrics(result, ideal);
        double phase = summary.all.max_phase_error_deg.value_or(INFINITY);
        bool ok = summary.all.points == 441 && summary.all.max_deviation <= limit && phase <= 1.5;
        if (std::string(pulse) == "sech-default") {
            ok = ok && seconds < 600.0;
        }
        pass = pass && ok;
        detail += fmt(" %s max dev %.3e (<= %g), max phase err %.3f deg (<= 1.5), %.1f s;", pulse,
                      summary.all.max_deviation, limit, phase, seconds);
    }
    detail += fmt(" %u hardware thread(s) available", std::max(1u, std::thread::hardware_concurrency()));
    report("A4", pass, detail);
}

void check_spectators() {
    Eigen::Vector4cd initial = SweepSpec::default_initial_qubits();
    auto untouched = IdealQubitState::from_amplitudes(initial);
    untouched.phases_deg.reset();
    bool pass = true;
    std::string detail = "1D C-NOT sweep, |D| >= 5 MHz, populations vs input:";
    for (const char *pulse : {"sech-default", "gauss-opt"}) {
        SweepSpec spec;
        spec.kind = SweepKind::kCnot1d;
        spec.pulse = pulse;
        spec.grid = {-10.0, 10.0, 201};
        auto result = cnot_sweep(spec);
        auto hole = deviation_metrics(result, untouched).outside_hole;
        double worst = hole ? hole->max_deviation : INFINITY;
        double at = 0.0, seen = -1.0;
        for (const auto &p : result.points) {
            if (std::abs(p.detuning_mhz) < 5.0 - 1e-12) {
                continue;
            }
            for (const auto &[label, value] : p.populations) {
                double dev = std::abs(value - untouched.populations.at(label));
                if (dev > seen) {
                    seen = dev;
                    at = p.detuning_mhz;
                }
            }
        }
        pass = pass && worst <= 1e-2;
        detail += fmt(" %s max dev %.3e at %+g MHz (%d points);", pulse, worst, at, hole ? hole->points : 0);
    }
    report("A5", pass, detail + " limit 1e-2");
}

void check_rotations() {
    double worst = 0.0;
    std::string worst_case;
    for (const char *pulse : {"gauss-opt", "sech-default"}) {
        double guard = std::string(pulse) == "sech-default" ? 1e-3 : 1e-4;
        for (double theta : {0.0, 45.0, 90.0, 180.0}) {
            for (double phi : {0.0, 90.0, 180.0}) {
                CMatrix u = extract_qubit_unitary(rotation_program(theta, phi, pulse), 0.0,
                                                  IntegratorConfig::adaptive(1e-12, 1e-14), guard);
                CMatrix ideal = normalize_global_phase(ideal_rotation(theta, phi));
                double err = (u - ideal).cwiseAbs().maxCoeff();
                if (err > worst) {
                    worst = err;
                    worst_case = fmt("%s theta=%g phi=%g", pulse, theta, phi);
                }
            }
        }
    }
    report("A6", worst <= 1e-3,
           fmt("rotation programs vs closed form, 12 angle pairs x 2 pulses: max entry error %.2e (%s), limit 1e-3",
               worst, worst_case.c_str()));
}

void check_properties() {
    const std::vector<double> detunings{-5.0, -0.5, -0.2, 0.0, 0.3, 0.5, 5.0};

    double drift = 0.0;
    for (const auto &pulse : standard_pulses()) {
        for (double d : detunings) {
            CVector psi = StateVector::basis(two_level_labels(), "g").amplitudes();
            propagate_in_place(psi, build_two_level({d, pulse}), pulse.t_start(), pulse.t_end(), {});
            drift = std::max(drift, std::abs(psi.squaredNorm() - 1.0));
        }
    }

    double dark_loss = 0.0;
    for (const auto &pulse : standard_pulses()) {
        for (double phi : {0.0, 90.0, 180.0}) {
            auto basis = dark_bright(phi);
            auto [p0, p1] = bright_transition_phases(phi);
            CVector start(3);
            start << basis.zero_bar[0], basis.zero_bar[1], 0.0;
            CVector psi = start;
            propagate_in_place(psi, build_lambda({0.3, pulse, Legs::kBoth, p0, p1, kTwoLegScale}), pulse.t_start(),
                               pulse.t_end(), {});
            dark_loss = std::max(dark_loss, 1.0 - std::norm(start.dot(psi)));
        }
    }

    std::string inverse_detail;
    double inverse_loss = 0.0;
    for (const auto &pulse : standard_pulses()) {
        GateProgram pair;
        pair.steps = {{Ion::kTarget, StepLegs::kLeg0, 0.0, pulse.name(), 0.0},
                      {Ion::kTarget, StepLegs::kLeg0, 0.0, pulse.name(), 180.0}};
        double worst = 0.0;
        for (double d : DetuningGrid{-0.5, 0.5, 21}.points()) {
            auto start = StateVector::basis(lambda_labels(), "0");
            auto out = execute_single_ion(pair, start, d);
            worst = std::max(worst, 1.0 - fidelity(start, out));
        }
        inverse_loss = std::max(inverse_loss, worst);
        inverse_detail += fmt(" %s %.1e", pulse.name().c_str(), worst);
    }

    bool monotone = true;
    for (const char *name : {"sech-default", "gauss-opt"}) {
        const auto &pulse = catalog_pulse(name);
        double previous = 2.0;
        for (double dip : {0.0, 5.0, 10.0, 15.0, 20.0}) {
            CVector psi = StateVector::basis(two_ion_labels(), "e0").amplitudes();
            propagate_in_place(psi, build_two_ion({0.0, 0.0, dip, Drive{Ion::kTarget, pulse, Legs::kLeg0}}),
                               pulse.t_start(), pulse.t_end(), {});
            double transfer = std::norm(psi[two_ion_index(2, 2)]);
            monotone = monotone && transfer <= previous;
            previous = transfer;
        }
    }

    double shift = 0.0;
    for (const auto &pulse : standard_pulses()) {
        for (double d : {0.0, 0.5, 5.0}) {
            shift = std::max(shift, std::abs(excitation(pulse, d) - excitation(pulse, d, IntegratorConfig::adaptive(
                                                                                           1e-11, 1e-13))));
        }
    }

    SweepSpec spec;
    spec.pulse = "gauss-opt";
    spec.grid = {-6.0, 6.0, 9};
    spec.workers = 1;
    std::ostringstream sequential, parallel;
    write_cnot_csv(sequential, cnot_sweep(spec));
    spec.workers = 4;
    write_cnot_csv(parallel, cnot_sweep(spec));
    bool deterministic = sequential.str() == parallel.str();

    bool pass = drift <= 1e-9 && dark_loss <= 1e-9 && inverse_loss <= 1e-3 && monotone && shift < 1e-8 &&
                deterministic;
    report("A7", pass,
           fmt("norm drift %.1e (<= 1e-9); dark-state loss %.1e (<= 1e-9); pulse+inverse loss over |D|<=0.5 "
               "%.2e (<= 1e-3):%s; blockade monotone %s; tolerance x10 shift %.1e (< 1e-8); parallel sweep "
               "bitwise equal %s",
               drift, dark_loss, inverse_loss, inverse_detail.c_str(), monotone ? "yes" : "no", shift,
               deterministic ? "yes" : "no"));
}

void check_optimizer() {
    ObjectiveSpec spec;
    OptimizerConfig cfg;
    Stopwatch clock;
    auto result = optimize(cfg, spec);
    double reference = objective({92.50, 96.98, 192.00, 6.86, 92.42, 96.23}, spec);
    report("A8", result.score <= 1.1 * reference,
           fmt("optimum from naive start %.4e vs published parameters %.4e (ratio %.3f, limit 1.1), "
               "%d evaluations, %.1f s; params %.2f_%.2f %.2f_%.2f %.2f_%.2f",
               result.score, reference, result.score / reference, result.evaluations, clock.seconds(),
               result.params[0], result.params[1], result.params[2], result.params[3], result.params[4],
               result.params[5]));
}

}  // namespace

int main() {
    using Check = void (*)();
    for (Check check : {check_sech_profile, check_optimized_composite, check_cnot_on_resonance, check_channel_grid,
                        check_spectators, check_rotations, check_properties, check_optimizer}) {
        try {
            check();
        } catch (const std::exception &e) {
            report("--", false, std::string("check aborted: ") + e.what());
        }
    }
    std::printf("%d check(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
