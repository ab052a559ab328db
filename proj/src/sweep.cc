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

#include "reqsim/sweep.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace reqsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::array<int, 4> kQubitIndex{0, 1, 3, 4};  // |00>, |01>, |10>, |11> in two_ion_labels()
constexpr double kPhaseAmplitudeFloor = 1e-6;

// Phases of 01, 10, 11 relative to 00, NaN where an amplitude is too small to carry a phase.
std::map<std::string, double> qubit_phases(const Eigen::Vector4cd &amps) {
    std::map<std::string, double> out;
    for (int k = 1; k < 4; k++) {
        double phase = kNaN;
        if (std::abs(amps[0]) > kPhaseAmplitudeFloor && std::abs(amps[k]) > kPhaseAmplitudeFloor) {
            phase = wrap_degrees(rad_to_deg(std::arg(amps[k]) - std::arg(amps[0])));
        }
        out[qubit_labels()[k]] = phase;
    }
    return out;
}

void accumulate(RegionStats &stats, double &sum, int &terms, const SweepPoint &p, const IdealQubitState &ideal) {
    stats.points++;
    for (const auto &label : qubit_labels()) {
        double dev = std::abs(p.populations.at(label) - ideal.populations.at(label));
        stats.max_deviation = std::max(stats.max_deviation, dev);
        sum += dev;
        terms++;
    }
    if (!ideal.phases_deg) {
        return;
    }
    for (const auto &[label, phase] : p.phases_deg) {
        auto it = ideal.phases_deg->find(label);
        if (it == ideal.phases_deg->end() || std::isnan(phase) || std::isnan(it->second)) {
            continue;
        }
        double err = std::abs(wrap_degrees(phase - it->second));
        stats.max_phase_error_deg = std::max(stats.max_phase_error_deg.value_or(0.0), err);
    }
}

}  // namespace

void DetuningGrid::validate() const {
    if (count < 2) {
        throw std::invalid_argument("detuning grid needs at least 2 points");
    }
    if (!(min_mhz < max_mhz)) {
        throw std::invalid_argument("detuning grid needs min < max");
    }
}

std::vector<double> DetuningGrid::points() const {
    validate();
    std::vector<double> out(static_cast<size_t>(count));
    for (int k = 0; k < count; k++) {
        out[static_cast<size_t>(k)] = min_mhz + (max_mhz - min_mhz) * k / (count - 1);
    }
    return out;
}

Eigen::Vector4cd SweepSpec::default_initial_qubits() {
    return Eigen::Vector4cd(std::sqrt(0.1), std::sqrt(0.2), std::sqrt(0.3), std::sqrt(0.4));
}

void parallel_for(size_t n, int workers, const std::function<void(size_t)> &fn) {
    size_t threads = workers > 0 ? static_cast<size_t>(workers) : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (size_t i = 0; i < n; i++) {
            fn(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (size_t w = 0; w < threads; w++) {
            pool.emplace_back([&] {
                for (size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                        next = n;
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

SweepResult excitation_profile(
    const std::string &pulse, const DetuningGrid &grid, const IntegratorConfig &cfg, int workers, UnitConvention units) {
    return excitation_profile(catalog_pulse(pulse), grid, cfg, workers, units);
}

SweepResult excitation_profile(
    const PulseSpec &pulse, const DetuningGrid &grid, const IntegratorConfig &cfg, int workers, UnitConvention units) {
    const PulseSpec spec = with_units(pulse, units);
    auto detunings = grid.points();
    SweepResult result;
    result.kind = SweepKind::kSinglePulse;
    result.pulse = pulse.name();
    result.points.resize(detunings.size());
    auto ground = StateVector::basis(two_level_labels(), "g");
    parallel_for(detunings.size(), workers, [&](size_t i) {
        auto h = build_two_level({detunings[i], spec, units});
        auto out = propagate(ground, h, spec.t_start(), spec.t_end(), cfg);
        auto &p = result.points[i];
        p.detuning_mhz = detunings[i];
        p.target_detuning_mhz = detunings[i];
        p.populations = populations(out);
    });
    return result;
}

Eigen::Vector4cd ideal_cnot(const Eigen::Vector4cd &input) {
    return Eigen::Vector4cd(input[0], input[1], input[3], input[2]);
}

SweepResult cnot_sweep(const SweepSpec &spec) {
    if (spec.kind == SweepKind::kSinglePulse) {
        throw std::invalid_argument("cnot_sweep needs a cnot-1d or cnot-2d spec");
    }
    double norm = spec.initial.norm();
    if (!(norm > 0.0) || !spec.initial.allFinite()) {
        throw std::invalid_argument("initial qubit state must be non-zero and finite");
    }
    Eigen::Vector4cd qubits = spec.initial / norm;
    CVector initial = CVector::Zero(9);
    for (int k = 0; k < 4; k++) {
        initial[kQubitIndex[k]] = qubits[k];
    }
    StateVector start(initial, two_ion_labels());
    Eigen::Vector4cd ideal = ideal_cnot(qubits);

    std::vector<std::pair<double, double>> grid;
    if (spec.kind == SweepKind::kCnot1d) {
        for (double d : spec.grid.points()) {
            grid.emplace_back(d, d);
        }
    } else {
        auto targets = spec.target_grid.points();
        for (double dc : spec.grid.points()) {
            for (double dt : targets) {
                grid.emplace_back(dc, dt);
            }
        }
    }

    GateProgram program = cnot_program(spec.pulse);
    SweepResult result;
    result.kind = spec.kind;
    result.pulse = spec.pulse;
    result.points.resize(grid.size());
    parallel_for(grid.size(), spec.workers, [&](size_t i) {
        auto [dc, dt] = grid[i];
        TwoIonParams params{dc, dt, spec.dipole_shift_mhz, spec.units};
        auto out = execute_two_ion(program, start, params, spec.integrator);
        Eigen::Vector4cd amps;
        for (int k = 0; k < 4; k++) {
            amps[k] = out.amplitudes()[kQubitIndex[k]];
        }
        auto &p = result.points[i];
        p.detuning_mhz = dc;
        p.target_detuning_mhz = dt;
        double qubit_weight = 0.0;
        for (int k = 0; k < 4; k++) {
            double pop = std::norm(amps[k]);
            qubit_weight += pop;
            p.populations[qubit_labels()[k]] = pop;
            p.deviations[qubit_labels()[k]] = std::abs(pop - std::norm(ideal[k]));
        }
        p.leakage = std::max(0.0, out.norm_squared() - qubit_weight);
        p.phases_deg = qubit_phases(amps);
    });
    return result;
}

IdealQubitState IdealQubitState::from_amplitudes(const Eigen::Vector4cd &amplitudes) {
    IdealQubitState ideal;
    for (int k = 0; k < 4; k++) {
        ideal.populations[qubit_labels()[k]] = std::norm(amplitudes[k]);
    }
    ideal.phases_deg = qubit_phases(amplitudes);
    return ideal;
}

DeviationSummary deviation_metrics(const SweepResult &result, const IdealQubitState &ideal) {
    if (result.kind == SweepKind::kSinglePulse) {
        throw std::invalid_argument("deviation metrics apply to C-NOT sweeps");
    }
    double total = 0.0;
    for (const auto &label : qubit_labels()) {
        auto it = ideal.populations.find(label);
        if (it == ideal.populations.end()) {
            throw std::invalid_argument("ideal distribution is missing label " + label);
        }
        total += it->second;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("ideal distribution must sum to 1");
    }

    constexpr double eps = 1e-12;
    DeviationSummary summary;
    RegionStats in_channel, outside;
    double sum_all = 0.0, sum_in = 0.0, sum_out = 0.0;
    int n_all = 0, n_in = 0, n_out = 0;
    for (const auto &p : result.points) {
        double a = std::abs(p.detuning_mhz), b = std::abs(p.target_detuning_mhz);
        accumulate(summary.all, sum_all, n_all, p, ideal);
        if (a <= kChannelHalfWidthMhz + eps && b <= kChannelHalfWidthMhz + eps) {
            accumulate(in_channel, sum_in, n_in, p, ideal);
        }
        if (a >= kHoleHalfWidthMhz - eps && b >= kHoleHalfWidthMhz - eps) {
            accumulate(outside, sum_out, n_out, p, ideal);
        }
    }
    if (n_all > 0) {
        summary.all.mean_deviation = sum_all / n_all;
    }
    if (in_channel.points > 0) {
        in_channel.mean_deviation = sum_in / n_in;
        summary.in_channel = in_channel;
    }
    if (outside.points > 0) {
        outside.mean_deviation = sum_out / n_out;
        summary.outside_hole = outside;
    }
    return summary;
}

std::vector<BlochSample> bloch_trajectory(
    const std::string &pulse, double detuning_mhz, int samples, const IntegratorConfig &cfg, UnitConvention units) {
    return bloch_trajectory(catalog_pulse(pulse), detuning_mhz, samples, cfg, units);
}

std::vector<BlochSample> bloch_trajectory(
    const PulseSpec &pulse, double detuning_mhz, int samples, const IntegratorConfig &cfg, UnitConvention units) {
    if (samples < 2) {
        throw std::invalid_argument("Bloch trajectory needs at least 2 samples");
    }
    auto h = build_two_level({detuning_mhz, with_units(pulse, units), units});
    CVector psi = StateVector::basis(two_level_labels(), "g").amplitudes();
    std::vector<BlochSample> out;
    double t0 = pulse.t_start();
    double span = pulse.duration();
    double t_prev = t0;
    for (int k = 0; k < samples; k++) {
        double t = t0 + span * k / (samples - 1);
        propagate_in_place(psi, h, t_prev, t, cfg);
        t_prev = t;
        Complex g = psi[0], e = psi[1];
        Complex coherence = std::conj(g) * e;
        out.push_back({t, 2.0 * coherence.real(), 2.0 * coherence.imag(), std::norm(e) - std::norm(g)});
    }
    return out;
}

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void write_profile_csv(std::ostream &out, const SweepResult &result) {
    out << "detuning_mhz,p_excited\n";
    for (const auto &p : result.points) {
        out << format_number(p.detuning_mhz) << ',' << format_number(p.populations.at("e")) << '\n';
    }
}

void write_cnot_csv(std::ostream &out, const SweepResult &result) {
    bool two_d = result.kind == SweepKind::kCnot2d;
    out << (two_d ? "dc_mhz,dt_mhz" : "detuning_mhz")
        << ",p00,p01,p10,p11,leak_e,phase01_deg,phase10_deg,phase11_deg\n";
    for (const auto &p : result.points) {
        out << format_number(p.detuning_mhz);
        if (two_d) {
            out << ',' << format_number(p.target_detuning_mhz);
        }
        for (const auto &label : qubit_labels()) {
            out << ',' << format_number(p.populations.at(label));
        }
        out << ',' << format_number(p.leakage);
        for (const char *label : {"01", "10", "11"}) {
            out << ',' << format_number(p.phases_deg.at(label));
        }
        out << '\n';
    }
}

void write_bloch_csv(std::ostream &out, const std::vector<BlochSample> &samples) {
    out << "t_us,sx,sy,sz\n";
    for (const auto &s : samples) {
        out << format_number(s.t_us) << ',' << format_number(s.x) << ',' << format_number(s.y) << ','
            << format_number(s.z) << '\n';
    }
}

}  // namespace reqsim
