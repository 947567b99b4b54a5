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

#include "biphoton/scan.hpp"

#include <cmath>

#include <fmt/format.h>

#include "biphoton/errors.hpp"

namespace biphoton {

std::vector<double> ScanResult::positions_nm() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(units::to_nm(s.position, unit));
    return out;
}

std::vector<double> ScanResult::rates() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.rate);
    return out;
}

void ScanResult::validate() const {
    for (std::size_t i = 0; i < samples.size(); i++) {
        if (i > 0 && !(samples[i].position > samples[i - 1].position)) {
            throw ConfigError(fmt::format("scan positions not strictly increasing at sample {}", i));
        }
        if (samples[i].rate < 0.0 || !std::isfinite(samples[i].rate)) {
            throw ConfigError(fmt::format("invalid rate {} at sample {}", samples[i].rate, i));
        }
    }
}

std::vector<double> scan_positions(double start, double stop, double step) {
    if (!(step > 0.0)) throw ConfigError("scan step must be positive");
    if (stop < start) throw ConfigError("scan stop must not precede start");
    std::vector<double> out;
    // Index-based so positions carry no accumulated rounding.
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step * (1.0 + 1e-9))) + 1;
    out.reserve(n);
    for (std::size_t k = 0; k < n; k++) out.push_back(start + static_cast<double>(k) * step);
    return out;
}

}  // namespace biphoton
