// Copyright 2026 The Biphoton Authors
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

// Unit conventions used throughout the library:
//   lengths      nanometres (scan positions may be declared in micrometres
//                and are converted here at the boundary)
//   frequencies  terahertz
//   phases       radians

#pragma once

#include <numbers>
#include <string_view>

namespace biphoton::units {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
/// c expressed in nm * THz.
inline constexpr double kSpeedOfLightNmThz = 299792.458;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class LengthUnit { kNanometre, kMicrometre };

constexpr double to_nm(double value, LengthUnit unit) {
    return unit == LengthUnit::kMicrometre ? value * 1e3 : value;
}

constexpr double from_nm(double nm, LengthUnit unit) {
    return unit == LengthUnit::kMicrometre ? nm * 1e-3 : nm;
}

constexpr std::string_view unit_symbol(LengthUnit unit) {
    return unit == LengthUnit::kMicrometre ? "um" : "nm";
}

/// Vacuum wavelength (nm) <-> optical frequency (THz).
constexpr double wavelength_to_thz(double wavelength_nm) { return kSpeedOfLightNmThz / wavelength_nm; }
constexpr double thz_to_wavelength(double thz) { return kSpeedOfLightNmThz / thz; }

constexpr double hz_to_thz(double hz) { return hz * 1e-12; }

/// Frequency width (THz) of the band [center - width/2, center + width/2] given in wavelength.
constexpr double band_width_thz(double center_nm, double width_nm) {
    return wavelength_to_thz(center_nm - 0.5 * width_nm) - wavelength_to_thz(center_nm + 0.5 * width_nm);
}

/// Optical phase 2*pi*nu*dL/c accumulated by frequency nu (THz) over path difference dL (nm).
constexpr double optical_phase(double thz, double path_nm) { return kTwoPi * thz * path_nm / kSpeedOfLightNmThz; }

/// Optical phase 2*pi*dL/lambda.
constexpr double path_phase(double path_nm, double wavelength_nm) { return kTwoPi * path_nm / wavelength_nm; }

}  // namespace biphoton::units
