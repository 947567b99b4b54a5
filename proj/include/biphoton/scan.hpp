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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biphoton/units.hpp"

namespace biphoton {

struct ScanSample {
    double position = 0.0;  // in ScanResult::unit
    double rate = 0.0;
    std::optional<std::int64_t> counts;
    std::optional<double> std_error;
};

/// Rate (or counts) sampled along a path-length axis. Positions are strictly
/// increasing and rates non-negative.
struct ScanResult {
    std::string axis_label;
    units::LengthUnit unit = units::LengthUnit::kNanometre;
    std::vector<ScanSample> samples;

    std::vector<double> positions_nm() const;
    std::vector<double> rates() const;
    /// Throws ConfigError when positions are not strictly increasing or a rate is negative.
    void validate() const;
};

/// start, start+step, ... up to and including `stop` (within step * 1e-9).
/// Throws ConfigError for step <= 0 or stop < start.
std::vector<double> scan_positions(double start, double stop, double step);

}  // namespace biphoton
