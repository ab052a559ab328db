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

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "reqsim/ion_models.h"

using namespace reqsim;

namespace {

template <typename F>
double simpson(F f, double a, double b, int intervals = 4000) {
    double h = (b - a) / intervals;
    double acc = f(a) + f(b);
    for (int k = 1; k < intervals; k++) {
        acc += f(a + k * h) * (k % 2 == 1 ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

const GaussianCompositeSpec &gaussian_shape(const PulseSpec &p) {
    return std::get<GaussianCompositeSpec>(p.shape());
}

double resonant_excitation(const PulseSpec &p) {
    auto h = build_two_level({0.0, p});
    auto out = propagate(StateVector::basis(two_level_labels(), "g"), h, p.t_start(), p.t_end(),
                         IntegratorConfig::adaptive(1e-12, 1e-14));
    return std::norm(out.amplitude("e"));
}

}  // namespace

TEST(pulses, catalog_contents) {
    std::vector<std::string> names;
    for (const auto &p : standard_pulses()) {
        names.push_back(p.name());
    }
    ASSERT_EQ(names, (std::vector<std::string>{"rect90-180-90", "rect90-180-90-caption", "gauss-naive", "gauss-opt",
                                               "gauss-single", "sech-default"}));

    const auto &opt = gaussian_shape(catalog_pulse("gauss-opt")).subpulses;
    ASSERT_EQ(opt.size(), 3u);
    double expected[3][2] = {{92.50, 96.98}, {192.00, 6.86}, {92.42, 96.23}};
    for (int k = 0; k < 3; k++) {
        ASSERT_EQ(opt[k].area_deg, expected[k][0]);
        ASSERT_EQ(opt[k].phase_deg, expected[k][1]);
    }
    for (const char *name : {"rect90-180-90", "rect90-180-90-caption", "gauss-naive", "gauss-opt", "gauss-single"}) {
        ASSERT_NEAR(catalog_pulse(name).duration(), 1.5, 1e-12) << name;
    }
    ASSERT_NEAR(catalog_pulse("sech-default").duration(), 3.0, 1e-12);
    ASSERT_THROW(catalog_pulse("gauss-nope"), std::invalid_argument);
}

TEST(pulses, caption_variant_differs_only_in_middle_phase) {
    const auto &text = std::get<RectCompositeSpec>(catalog_pulse("rect90-180-90").shape()).subpulses;
    const auto &caption = std::get<RectCompositeSpec>(catalog_pulse("rect90-180-90-caption").shape()).subpulses;
    ASSERT_EQ(text[1].phase_deg, 0.0);
    ASSERT_EQ(caption[1].phase_deg, 180.0);
    ASSERT_EQ(text[0].phase_deg, caption[0].phase_deg);
    ASSERT_EQ(text[2].phase_deg, caption[2].phase_deg);
}

TEST(pulses, rect_durations_scale_with_area) {
    const auto &sub = std::get<RectCompositeSpec>(catalog_pulse("rect90-180-90").shape()).subpulses;
    ASSERT_NEAR(sub[0].width_us, 0.375, 1e-12);
    ASSERT_NEAR(sub[1].width_us, 0.75, 1e-12);
    ASSERT_NEAR(sub[2].width_us, 0.375, 1e-12);
    // Constant amplitude: area / duration is the same for every sub-pulse.
    double rabi = std::abs(rabi_at(catalog_pulse("rect90-180-90"), 0.1));
    ASSERT_NEAR(rabi * 0.375, M_PI / 2, 1e-12);
    ASSERT_NEAR(std::abs(rabi_at(catalog_pulse("rect90-180-90"), 0.9)), rabi, 1e-12);
}

TEST(pulses, gaussian_sigma_and_contiguous_windows) {
    const auto &spec = gaussian_shape(catalog_pulse("gauss-naive"));
    double sigma = 1.5 / (3 * 7.0);
    ASSERT_NEAR(sigma * 1e3, 71.43, 0.01);
    double prev_end = 0.0;
    for (const auto &s : spec.subpulses) {
        ASSERT_NEAR(s.width_us, sigma, 1e-12);
        ASSERT_NEAR(s.center_us - 3.5 * s.width_us, prev_end, 1e-12);
        prev_end = s.center_us + 3.5 * s.width_us;
    }
    ASSERT_NEAR(prev_end, 1.5, 1e-12);

    double single_sigma = gaussian_shape(catalog_pulse("gauss-single")).subpulses.at(0).width_us;
    ASSERT_NEAR(single_sigma, 1.5 / 7.0, 1e-12);
}

TEST(pulses, cutoff_amplitude_ratio) {
    const auto &pulse = catalog_pulse("gauss-naive");
    const auto &s = gaussian_shape(pulse).subpulses[1];
    double peak = std::abs(rabi_at(pulse, s.center_us));
    double edge = std::abs(rabi_at(pulse, std::nextafter(s.center_us + 3.5 * s.width_us, 0.0)));
    ASSERT_NEAR(edge / peak, std::exp(-0.5 * 3.5 * 3.5), 1e-9);
    ASSERT_NEAR(edge / peak, 2e-3, 2e-4);
}

TEST(pulses, gaussian_subpulse_areas_by_quadrature) {
    for (const char *name : {"gauss-naive", "gauss-opt", "gauss-single"}) {
        const auto &pulse = catalog_pulse(name);
        for (const auto &s : gaussian_shape(pulse).subpulses) {
            double a = s.center_us - 3.5 * s.width_us + 1e-12, b = s.center_us + 3.5 * s.width_us - 1e-12;
            double area = simpson([&](double t) { return std::abs(rabi_at(pulse, t)); }, a, b);
            double expected = s.area_deg * M_PI / 180.0;
            ASSERT_NEAR(area / expected, 1.0, 5e-3) << name;
            ASSERT_LT(area, expected) << name;
        }
    }
}

TEST(pulses, sech_peak_magnitude) {
    const auto &pulse = catalog_pulse("sech-default");
    ASSERT_DOUBLE_EQ(std::abs(rabi_at(pulse, 1.5)), 2.0 * 2.0 * M_PI);
    auto angular = with_units(pulse, UnitConvention::kAngular);
    ASSERT_DOUBLE_EQ(std::abs(rabi_at(angular, 1.5)), 2.0);
}

TEST(pulses, sech_chirp_decomposition) {
    SechPulseSpec spec;
    auto at_center = sech_chirp_decomposition(spec, spec.center_us);
    ASSERT_EQ(at_center.magnitude_mhz, 2.0);
    ASSERT_EQ(at_center.frequency_offset_mhz, 0.0);

    auto far = sech_chirp_decomposition(spec, 1e4);
    ASSERT_LT(far.magnitude_mhz, 1e-100);
    ASSERT_NEAR(far.frequency_offset_mhz, 1.92, 1e-12);
    ASSERT_NEAR(sech_chirp_decomposition(spec, -1e4).frequency_offset_mhz, -1.92, 1e-12);
}

TEST(pulses, sech_phase_derivative_matches_chirp) {
    const auto &pulse = catalog_pulse("sech-default");
    double beta = 2.0 * M_PI * 0.64, mu = 3.0, eps = 1e-5;
    for (double t : {0.1, 0.9, 1.4, 1.5, 2.2, 2.95}) {
        double dphase = std::arg(rabi_at(pulse, t + eps) / rabi_at(pulse, t - eps)) / (2 * eps);
        ASSERT_NEAR(dphase, -mu * beta * std::tanh(beta * (t - 1.5)), 1e-6 * mu * beta);
    }
}

TEST(pulses, sech_recombination_reproduces_waveform) {
    const auto &pulse = catalog_pulse("sech-default");
    const auto &spec = std::get<SechPulseSpec>(pulse.shape());
    for (double t : {0.0, 0.4, 1.5, 2.1, 3.0}) {
        double swept = simpson([&](double s) { return sech_chirp_decomposition(spec, s).frequency_offset_mhz; },
                               spec.center_us, t);
        auto sample = sech_chirp_decomposition(spec, t);
        Complex rebuilt = std::polar(2.0 * M_PI * sample.magnitude_mhz, -2.0 * M_PI * swept);
        Complex direct = rabi_at(pulse, t);
        ASSERT_LE(std::abs(rebuilt - direct), 1e-10 * std::abs(direct)) << t;
    }
}

TEST(pulses, waveform_vanishes_outside_window) {
    for (const auto &pulse : standard_pulses()) {
        for (double t : {pulse.t_start() - 1e-9, pulse.t_end() + 1e-9, pulse.t_start() - 5.0, pulse.t_end() + 5.0}) {
            ASSERT_EQ(rabi_at(pulse, t), Complex(0.0)) << pulse.name();
        }
        ASSERT_NE(rabi_at(pulse, 0.5 * (pulse.t_start() + pulse.t_end())), Complex(0.0)) << pulse.name();
    }
}

TEST(pulses, gaussian_phase_is_constant_within_each_window) {
    std::mt19937_64 rng(3);
    for (const char *name : {"gauss-naive", "gauss-opt"}) {
        for (double extra : {0.0, 37.0, 180.0}) {
            auto pulse = catalog_pulse(name).with_extra_phase(extra);
            for (const auto &s : gaussian_shape(pulse).subpulses) {
                std::uniform_real_distribution<double> t(s.center_us - 3.4 * s.width_us, s.center_us + 3.4 * s.width_us);
                for (int k = 0; k < 20; k++) {
                    double phase = std::arg(rabi_at(pulse, t(rng))) * 180.0 / M_PI;
                    ASSERT_NEAR(wrap_degrees(phase + s.phase_deg + extra), 0.0, 1e-9) << name;
                }
            }
        }
    }
}

TEST(pulses, extra_phase_multiplies_waveform) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> phase(-360.0, 360.0);
    for (const auto &pulse : standard_pulses()) {
        for (int trial = 0; trial < 10; trial++) {
            double delta = phase(rng);
            auto shifted = pulse.with_extra_phase(delta);
            std::uniform_real_distribution<double> t(pulse.t_start(), pulse.t_end());
            double s = t(rng);
            Complex expected = rabi_at(pulse, s) * std::polar(1.0, -delta * M_PI / 180.0);
            ASSERT_LE(std::abs(rabi_at(shifted, s) - expected), 1e-12 * (1.0 + std::abs(expected))) << pulse.name();
        }
    }
    ASSERT_EQ(catalog_pulse("gauss-opt").inverse().extra_phase_deg(), 180.0);
}

TEST(pulses, rect_and_gaussian_agree_on_resonance) {
    const std::vector<std::vector<AreaPhase>> sequences{
        {{90, 90}, {180, 0}, {90, 90}},
        {{92.50, 96.98}, {192.00, 6.86}, {92.42, 96.23}},
        {{60, 0}, {45, 120}},
    };
    for (const auto &seq : sequences) {
        double rect = resonant_excitation(make_rect_composite("r", seq, 1.5));
        double gauss = resonant_excitation(make_gaussian_composite("g", seq, 1.5 * 6.0 / 3.5, 6.0));
        ASSERT_NEAR(rect, gauss, 1e-6);
    }
}

TEST(pulses, parse_sequence) {
    auto seq = parse_sequence("92.50_96.98 192.00_6.86  92.42_96.23");
    ASSERT_EQ(seq.size(), 3u);
    ASSERT_EQ(seq[1].area_deg, 192.0);
    ASSERT_EQ(seq[1].phase_deg, 6.86);
    ASSERT_THROW(parse_sequence(""), std::invalid_argument);
    ASSERT_THROW(parse_sequence("90"), std::invalid_argument);
    ASSERT_THROW(parse_sequence("90_x"), std::invalid_argument);
}

TEST(pulses, invalid_parameters_are_rejected) {
    ASSERT_THROW(PulseSpec("s", SechPulseSpec{.peak_rabi_mhz = 0.0}), std::invalid_argument);
    ASSERT_THROW(PulseSpec("s", SechPulseSpec{.rate_mhz = -1.0}), std::invalid_argument);
    ASSERT_THROW(PulseSpec("s", SechPulseSpec{.duration_us = 0.0}), std::invalid_argument);
    ASSERT_THROW(PulseSpec("g", GaussianCompositeSpec{{{90, 0, 0.5, 0.0}}}), std::invalid_argument);
    ASSERT_THROW(PulseSpec("g", GaussianCompositeSpec{{{-90, 0, 0.5, 0.1}}}), std::invalid_argument);
    ASSERT_THROW(PulseSpec("g", GaussianCompositeSpec{{{90, 0, 0.5, 0.1}, {90, 0, 0.6, 0.1}}}),
                 std::invalid_argument);
    ASSERT_THROW(PulseSpec("r", RectCompositeSpec{{{90, 0, 0.5, 0.0}}}), std::invalid_argument);
    std::vector<AreaPhase> none;
    ASSERT_THROW(make_gaussian_composite("g", none, 1.5), std::invalid_argument);
}
