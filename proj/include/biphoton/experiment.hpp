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

// Configuration-driven experiment runner: config files, presets, scans with
// optional Poisson counting noise, oracle comparison, CSV and report output.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "biphoton/detection.hpp"
#include "biphoton/spectral.hpp"

namespace biphoton {

inline constexpr std::string_view kSoftwareName = "biphoton";
inline constexpr std::string_view kSoftwareVersion = "0.1.0";

enum class ExperimentKind { kHom, kMzOnePhoton, kMzTwoPhoton, kOracleCheck };
enum class MonteCarloMode { kOff, kPoisson };

std::string_view experiment_name(ExperimentKind kind);

struct ScanRange {
    double start = -2500.0;
    double stop = 2500.0;
    double step = 43.0;
    units::LengthUnit unit = units::LengthUnit::kNanometre;

    bool operator==(const ScanRange&) const = default;
};

struct OracleSettings {
    double alpha_re = 0.5;
    double alpha_im = 0.0;
    std::size_t points = 1000;

    bool operator==(const OracleSettings&) const = default;
};

/// Every field maps to one key of the config file; see config_keys().
struct ExperimentConfig {
    std::string name = "run";
    ExperimentKind experiment = ExperimentKind::kMzTwoPhoton;
    PumpSpectrum pump;
    FilterSpectrum filter;
    double phasematch_bandwidth_nm = 20.0;
    double distinguishability = 1.0;
    ScanRange scan;
    double rate_scale = 1000.0;      // counts/s for a unit per-trial rate
    double integration_time = 1.0;   // s
    MonteCarloMode monte_carlo = MonteCarloMode::kOff;
    std::optional<std::uint64_t> seed;
    std::size_t grid_points = 2001;
    OracleSettings oracle;

    /// Throws ConfigError naming every invalid field.
    void validate() const;
    /// Spectral grid derived from the pump and filter.
    SpectralGrid spectral_grid() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Documented config keys, in file order.
const std::vector<std::string_view>& config_keys();

/// Parses the flat "key = value" format ('#' starts a comment). Unknown or
/// repeated keys and malformed values are ConfigErrors; missing keys keep
/// their defaults. The result is validated.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Writes every key; doubles with 17 significant digits so parsing restores them exactly.
std::string serialize_config(const ExperimentConfig& config);

/// Built-in scenarios: "fig3" (HOM dip), "fig4" (one- and two-photon fringes
/// near zero path difference), "fig5" (the same near 400 um).
std::vector<ExperimentConfig> preset(std::string_view name);
std::vector<std::string_view> preset_names();

/// Draws a Poisson count with mean rate * integration_time.
std::int64_t sample_counts(double rate, double integration_time, std::mt19937_64& rng);

struct OracleDeviation {
    AnalyticFormula formula;
    double scale = 1.0;       // least-squares factor applied to the simulated rates
    double max_deviation = 0.0;
    double rms_deviation = 0.0;
};

/// Full Fock-space simulation of the Mach-Zehnder (|1,1>, |0,1> and
/// truncated |0,alpha> inputs) against analytic_rate on every phase of
/// `phi_grid`, after one global least-squares scale per formula.
std::vector<OracleDeviation> compare_oracles(const std::vector<double>& phi_grid, Complex alpha);

/// Tolerance each oracle family is held to.
double oracle_tolerance(AnalyticFormula formula);

struct RunOptions {
    bool include_wall_time = false;
};

struct RunOutput {
    std::optional<ScanResult> scan;
    std::vector<OracleDeviation> oracle;
    nlohmann::json report;
    std::filesystem::path csv_path;
    std::filesystem::path report_path;
    bool numerical_failure = false;  // oracle deviations above tolerance
};

/// Runs the configured experiment without touching the filesystem.
RunOutput simulate(const ExperimentConfig& config, const RunOptions& options = {});
/// simulate() then writes <out_dir>/<name>.csv and <out_dir>/<name>.report.json.
RunOutput run(const ExperimentConfig& config, const std::filesystem::path& out_dir, const RunOptions& options = {});

/// CSV text: header "position_<unit>,rate[,counts,stderr]", 12 significant digits.
std::string scan_to_csv(const ScanResult& scan);
std::string oracle_to_csv(const std::vector<OracleDeviation>& rows);

}  // namespace biphoton
