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

#include "reqsim/pulses.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace reqsim {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

// log(sech(x)) without overflow for large |x|.
double log_sech(double x) {
    double ax = std::abs(x);
    return -ax - std::log1p(std::exp(-2.0 * ax)) + std::log(2.0);
}

void validate(const RectCompositeSpec &spec, double &t_start, double &t_end) {
    if (spec.subpulses.empty()) {
        throw std::invalid_argument("rectangular composite needs at least one sub-pulse");
    }
    double prev_end = 0.0;
    for (size_t k = 0; k < spec.subpulses.size(); k++) {
        const auto &p = spec.subpulses[k];
        if (!(p.width_us > 0.0)) {
            throw std::invalid_argument("rectangular sub-pulse duration must be positive");
        }
        if (p.area_deg < 0.0) {
            throw std::invalid_argument("sub-pulse area must be non-negative");
        }
        double start = p.center_us - 0.5 * p.width_us;
        if (k > 0 && std::abs(start - prev_end) > 1e-12) {
            throw std::invalid_argument("rectangular sub-pulses must be contiguous");
        }
        prev_end = p.center_us + 0.5 * p.width_us;
    }
    t_start = spec.subpulses.front().center_us - 0.5 * spec.subpulses.front().width_us;
    t_end = prev_end;
}

void validate(const GaussianCompositeSpec &spec, double &t_start, double &t_end) {
    if (spec.subpulses.empty()) {
        throw std::invalid_argument("Gaussian composite needs at least one sub-pulse");
    }
    if (!(spec.cutoff_multiple > 0.0)) {
        throw std::invalid_argument("cutoff multiple must be positive");
    }
    double prev_end = 0.0;
    for (size_t k = 0; k < spec.subpulses.size(); k++) {
        const auto &p = spec.subpulses[k];
        if (!(p.width_us > 0.0)) {
            throw std::invalid_argument("Gaussian sigma must be positive");
        }
        if (p.area_deg < 0.0) {
            throw std::invalid_argument("sub-pulse area must be non-negative");
        }
        double a = spec.cutoff_multiple * p.width_us;
        if (k > 0 && std::abs((p.center_us - a) - prev_end) > 1e-12) {
            throw std::invalid_argument("Gaussian sub-pulse windows must be contiguous and in time order");
        }
        prev_end = p.center_us + a;
    }
    const auto &first = spec.subpulses.front();
    t_start = first.center_us - spec.cutoff_multiple * first.width_us;
    t_end = prev_end;
}

void validate(const SechPulseSpec &spec, double &t_start, double &t_end) {
    if (!(spec.peak_rabi_mhz > 0.0) || !(spec.rate_mhz > 0.0) || !(spec.duration_us > 0.0)) {
        throw std::invalid_argument("sech pulse needs positive peak Rabi frequency, rate and duration");
    }
    t_start = spec.center_us - 0.5 * spec.duration_us;
    t_end = spec.center_us + 0.5 * spec.duration_us;
}

Complex envelope(const RectCompositeSpec &spec, double t) {
    Complex sum = 0.0;
    for (const auto &p : spec.subpulses) {
        double half = 0.5 * p.width_us;
        if (t >= p.center_us - half && t <= p.center_us + half) {
            sum += deg_to_rad(p.area_deg) / p.width_us * std::polar(1.0, -deg_to_rad(p.phase_deg));
        }
    }
    return sum;
}

Complex envelope(const GaussianCompositeSpec &spec, double t) {
    Complex sum = 0.0;
    for (const auto &p : spec.subpulses) {
        double a = spec.cutoff_multiple * p.width_us;
        double dt = t - p.center_us;
        if (std::abs(dt) <= a) {
            double sigma = p.width_us;
            double amp = deg_to_rad(p.area_deg) / std::sqrt(kTwoPi * sigma * sigma) *
                         std::exp(-dt * dt / (2.0 * sigma * sigma));
            sum += amp * std::polar(1.0, -deg_to_rad(p.phase_deg));
        }
    }
    return sum;
}

Complex envelope(const SechPulseSpec &spec, double t) {
    double beta = mhz_to_rad_per_us(spec.rate_mhz, spec.units);
    double peak = mhz_to_rad_per_us(spec.peak_rabi_mhz, spec.units);
    double ls = log_sech(beta * (t - spec.center_us));
    // sech^(1 + i mu) = exp((1 + i mu) log sech)
    return peak * std::exp(Complex(ls, spec.chirp * ls));
}

}  // namespace

PulseSpec::PulseSpec(std::string name, Shape shape, double extra_phase_deg)
    : name_(std::move(name)), shape_(std::move(shape)), extra_phase_deg_(extra_phase_deg) {
    if (!std::isfinite(extra_phase_deg_)) {
        throw std::invalid_argument("extra phase must be finite");
    }
    std::visit([&](const auto &s) { validate(s, t_start_, t_end_); }, shape_);
}

PulseSpec PulseSpec::with_extra_phase(double delta_deg) const {
    return PulseSpec(name_, shape_, extra_phase_deg_ + delta_deg);
}

std::vector<double> PulseSpec::breakpoints() const {
    std::vector<double> out{t_start_, t_end_};
    std::visit(Overloaded{
                   [&](const RectCompositeSpec &s) {
                       for (const auto &p : s.subpulses) {
                           out.push_back(p.center_us + 0.5 * p.width_us);
                       }
                   },
                   [&](const GaussianCompositeSpec &s) {
                       for (const auto &p : s.subpulses) {
                           out.push_back(p.center_us + s.cutoff_multiple * p.width_us);
                       }
                   },
                   [&](const SechPulseSpec &) {},
               },
               shape_);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              out.end());
    return out;
}

Complex rabi_at(const PulseSpec &pulse, double t) {
    if (t < pulse.t_start() || t > pulse.t_end()) {
        return 0.0;
    }
    Complex value = std::visit([t](const auto &s) { return envelope(s, t); }, pulse.shape());
    if (pulse.extra_phase_deg() != 0.0) {
        value *= std::polar(1.0, -deg_to_rad(pulse.extra_phase_deg()));
    }
    return value;
}

ChirpSample sech_chirp_decomposition(const SechPulseSpec &pulse, double t) {
    double beta = mhz_to_rad_per_us(pulse.rate_mhz, pulse.units);
    double x = beta * (t - pulse.center_us);
    return {
        pulse.peak_rabi_mhz * std::exp(log_sech(x)),
        pulse.chirp * pulse.rate_mhz * std::tanh(x),
    };
}

PulseSpec make_rect_composite(std::string name, std::span<const AreaPhase> sequence, double total_us) {
    double total_area = 0.0;
    for (const auto &s : sequence) {
        total_area += s.area_deg;
    }
    if (!(total_area > 0.0) || !(total_us > 0.0)) {
        throw std::invalid_argument("rectangular composite needs positive total area and duration");
    }
    RectCompositeSpec spec;
    double t = 0.0;
    for (const auto &s : sequence) {
        double d = total_us * s.area_deg / total_area;
        spec.subpulses.push_back({s.area_deg, s.phase_deg, t + 0.5 * d, d});
        t += d;
    }
    return PulseSpec(std::move(name), std::move(spec));
}

PulseSpec make_gaussian_composite(
    std::string name, std::span<const AreaPhase> sequence, double total_us, double cutoff_multiple) {
    if (sequence.empty() || !(total_us > 0.0) || !(cutoff_multiple > 0.0)) {
        throw std::invalid_argument("Gaussian composite needs sub-pulses, a positive duration and cutoff");
    }
    double window = total_us / static_cast<double>(sequence.size());
    double sigma = window / (2.0 * cutoff_multiple);
    GaussianCompositeSpec spec;
    spec.cutoff_multiple = cutoff_multiple;
    for (size_t k = 0; k < sequence.size(); k++) {
        spec.subpulses.push_back({
            sequence[k].area_deg,
            sequence[k].phase_deg,
            (static_cast<double>(k) + 0.5) * window,
            sigma,
        });
    }
    // Re-anchor centres on the previous window edge.
    for (size_t k = 1; k < spec.subpulses.size(); k++) {
        const auto &prev = spec.subpulses[k - 1];
        spec.subpulses[k].center_us = prev.center_us + 2.0 * cutoff_multiple * sigma;
    }
    return PulseSpec(std::move(name), std::move(spec));
}

PulseSpec with_units(const PulseSpec &pulse, UnitConvention units) {
    if (const auto *sech = std::get_if<SechPulseSpec>(&pulse.shape())) {
        SechPulseSpec copy = *sech;
        copy.units = units;
        return PulseSpec(pulse.name(), copy, pulse.extra_phase_deg());
    }
    return pulse;
}

std::vector<AreaPhase> parse_sequence(std::string_view text) {
    std::vector<AreaPhase> out;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
        auto sep = token.find('_');
        if (sep == std::string::npos) {
            throw std::invalid_argument("sequence element '" + token + "' is not of the form area_phase");
        }
        try {
            size_t used_area = 0, used_phase = 0;
            std::string area = token.substr(0, sep), phase = token.substr(sep + 1);
            AreaPhase ap{std::stod(area, &used_area), std::stod(phase, &used_phase)};
            if (used_area != area.size() || used_phase != phase.size()) {
                throw std::invalid_argument("trailing characters");
            }
            out.push_back(ap);
        } catch (const std::exception &) {
            throw std::invalid_argument("sequence element '" + token + "' is not of the form area_phase");
        }
    }
    if (out.empty()) {
        throw std::invalid_argument("empty pulse sequence");
    }
    return out;
}

const std::vector<PulseSpec> &standard_pulses() {
    static const std::vector<PulseSpec> catalog = [] {
        constexpr std::array<AreaPhase, 3> compensated{{{90, 90}, {180, 0}, {90, 90}}};
        constexpr std::array<AreaPhase, 3> caption_variant{{{90, 90}, {180, 180}, {90, 90}}};
        constexpr std::array<AreaPhase, 3> optimized{{{92.50, 96.98}, {192.00, 6.86}, {92.42, 96.23}}};
        constexpr std::array<AreaPhase, 1> single{{{180, 0}}};
        std::vector<PulseSpec> out;
        out.push_back(make_rect_composite("rect90-180-90", compensated, kCompositeDurationUs));
        out.push_back(make_rect_composite("rect90-180-90-caption", caption_variant, kCompositeDurationUs));
        out.push_back(make_gaussian_composite("gauss-naive", compensated, kCompositeDurationUs));
        out.push_back(make_gaussian_composite("gauss-opt", optimized, kCompositeDurationUs));
        out.push_back(make_gaussian_composite("gauss-single", single, kCompositeDurationUs));
        out.emplace_back("sech-default", SechPulseSpec{});
        return out;
    }();
    return catalog;
}

const PulseSpec &catalog_pulse(std::string_view name) {
    for (const auto &p : standard_pulses()) {
        if (p.name() == name) {
            return p;
        }
    }
    std::string known;
    for (const auto &p : standard_pulses()) {
        known += (known.empty() ? "" : ", ") + p.name();
    }
    throw std::invalid_argument("unknown pulse '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace reqsim
