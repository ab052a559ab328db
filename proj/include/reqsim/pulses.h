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

#ifndef REQSIM_PULSES_H
#define REQSIM_PULSES_H

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "reqsim/state.h"
#include "reqsim/units.h"

namespace reqsim {

/// Area and phase of one sub-pulse, both in degrees ("90_90" is {90, 90}).
struct AreaPhase {
    double area_deg;
    double phase_deg;
};

/// One element of a composite sequence. `width_us` is the Gaussian sigma for Gaussian
/// composites and the full duration for rectangular ones.
struct SubPulse {
    double area_deg;
    double phase_deg;
    double center_us;
    double width_us;
};

/// Back-to-back constant-amplitude sub-pulses.
struct RectCompositeSpec {
    std::vector<SubPulse> subpulses;
};

/// Area-normalized Gaussians, each truncated to [center - a, center + a] with a = cutoff_multiple * sigma.
struct GaussianCompositeSpec {
    std::vector<SubPulse> subpulses;
    double cutoff_multiple = 3.5;
};

/// Omega(t) = Omega0 * sech(beta (t - t0))^(1 + i mu), truncated to a window of `duration_us`
/// centred on t0. Frequencies are in MHz and converted according to `units`.
struct SechPulseSpec {
    double peak_rabi_mhz = 2.0;
    double rate_mhz = 0.64;
    double chirp = 3.0;
    double center_us = 1.5;
    double duration_us = 3.0;
    UnitConvention units = UnitConvention::kCyclic;
};

/// An immutable complex Rabi-frequency waveform, zero outside [t_start, t_end].
class PulseSpec {
   public:
    using Shape = std::variant<RectCompositeSpec, GaussianCompositeSpec, SechPulseSpec>;

    /// Validates the shape; throws std::invalid_argument on bad parameters.
    PulseSpec(std::string name, Shape shape, double extra_phase_deg = 0.0);

    const std::string &name() const {
        return name_;
    }
    const Shape &shape() const {
        return shape_;
    }
    double extra_phase_deg() const {
        return extra_phase_deg_;
    }
    double t_start() const {
        return t_start_;
    }
    double t_end() const {
        return t_end_;
    }
    double duration() const {
        return t_end_ - t_start_;
    }

    /// Same waveform with `delta_deg` added to the global phase.
    PulseSpec with_extra_phase(double delta_deg) const;

    /// The pulse that undoes this one on resonance: global phase shifted by 180 degrees.
    PulseSpec inverse() const {
        return with_extra_phase(180.0);
    }

    /// Window edges and internal sub-pulse boundaries.
    std::vector<double> breakpoints() const;

   private:
    std::string name_;
    Shape shape_;
    double extra_phase_deg_;
    double t_start_ = 0.0;
    double t_end_ = 0.0;
};

/// Complex Rabi frequency in rad/us at time t (us).
Complex rabi_at(const PulseSpec &pulse, double t);

struct ChirpSample {
    double magnitude_mhz;
    double frequency_offset_mhz;
};

/// Splits a sech pulse into its real envelope and tanh frequency sweep around the carrier.
ChirpSample sech_chirp_decomposition(const SechPulseSpec &pulse, double t);

/// Rectangular composite of total duration `total_us`; sub-pulse durations scale with their
/// areas so the Rabi amplitude is the same throughout.
PulseSpec make_rect_composite(std::string name, std::span<const AreaPhase> sequence, double total_us);

/// Gaussian composite with contiguous windows of width 2*cutoff*sigma filling `total_us`.
PulseSpec make_gaussian_composite(
    std::string name, std::span<const AreaPhase> sequence, double total_us, double cutoff_multiple = 3.5);

/// Copy of `pulse` whose MHz parameters follow `units`; only sech pulses carry MHz values.
PulseSpec with_units(const PulseSpec &pulse, UnitConvention units);

/// Parses "92.50_96.98 192.00_6.86 92.42_96.23" into area/phase pairs.
std::vector<AreaPhase> parse_sequence(std::string_view text);

/// Named pulses: rect90-180-90, rect90-180-90-caption, gauss-naive, gauss-opt, gauss-single, sech-default.
const std::vector<PulseSpec> &standard_pulses();

/// Looks up a catalog pulse by name; throws std::invalid_argument for unknown names.
const PulseSpec &catalog_pulse(std::string_view name);

/// Total composite duration used for every catalog composite (us).
inline constexpr double kCompositeDurationUs = 1.5;

}  // namespace reqsim

#endif  // REQSIM_PULSES_H
