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

#ifndef REQSIM_UNITS_H
#define REQSIM_UNITS_H

#include <cmath>
#include <numbers>

namespace reqsim {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// How a frequency quoted in MHz maps onto the angular rate (rad/us) used by the integrator.
enum class UnitConvention {
    /// MHz values are cyclic frequencies: omega = 2*pi*nu.
    kCyclic,
    /// MHz values are already angular rates in rad/us.
    kAngular,
};

inline double mhz_to_rad_per_us(double mhz, UnitConvention units = UnitConvention::kCyclic) {
    return units == UnitConvention::kCyclic ? kTwoPi * mhz : mhz;
}

inline double rad_per_us_to_mhz(double rate, UnitConvention units = UnitConvention::kCyclic) {
    return units == UnitConvention::kCyclic ? rate / kTwoPi : rate;
}

inline double deg_to_rad(double deg) {
    return deg * std::numbers::pi / 180.0;
}

inline double rad_to_deg(double rad) {
    return rad * 180.0 / std::numbers::pi;
}

/// Wraps an angle in degrees into (-180, 180].
inline double wrap_degrees(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w <= -180.0) {
        w += 360.0;
    } else if (w > 180.0) {
        w -= 360.0;
    }
    return w;
}

}  // namespace reqsim

#endif  // REQSIM_UNITS_H
