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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "biphoton/errors.hpp"
#include "biphoton/experiment.hpp"

namespace biphoton {

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

double parse_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError(fmt::format("{}: '{}' is not a number", key, value));
    }
    return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError(fmt::format("{}: '{}' is not a non-negative integer", key, value));
    }
    return out;
}

template <typename Enum>
Enum parse_enum(std::string_view key, std::string_view value,
                std::initializer_list<std::pair<std::string_view, Enum>> options) {
    for (const auto& [name, e] : options) {
        if (name == value) return e;
    }
    std::string allowed;
    for (const auto& [name, e] : options) allowed += (allowed.empty() ? "" : "|") + std::string(name);
    throw ConfigError(fmt::format("{}: '{}' is not one of {{{}}}", key, value, allowed));
}

// Shortest representation that parses back to the same double.
std::string fmt_double(double v) { return fmt::format("{}", v); }

std::string_view pump_shape_name(PumpShape s) { return s == PumpShape::kDelta ? "delta" : "gaussian"; }
std::string_view filter_shape_name(FilterShape s) { return s == FilterShape::kRectangular ? "rectangular" : "gaussian"; }
std::string_view mc_name(MonteCarloMode m) { return m == MonteCarloMode::kPoisson ? "poisson" : "off"; }

struct KeyBinding {
    std::string_view key;
    std::function<void(ExperimentConfig&, std::string_view)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

const std::vector<KeyBinding>& bindings() {
    using C = ExperimentConfig;
    using units::LengthUnit;
    static const std::vector<KeyBinding> table = {
        {"name", [](C& c, std::string_view v) { c.name = std::string(v); }, [](const C& c) { return c.name; }},
        {"experiment",
         [](C& c, std::string_view v) {
             c.experiment = parse_enum<ExperimentKind>("experiment", v,
                                                       {{"hom", ExperimentKind::kHom},
                                                        {"mz_one_photon", ExperimentKind::kMzOnePhoton},
                                                        {"mz_two_photon", ExperimentKind::kMzTwoPhoton},
                                                        {"oracle_check", ExperimentKind::kOracleCheck}});
         },
         [](const C& c) { return std::string(experiment_name(c.experiment)); }},
        {"pump.wavelength_nm", [](C& c, std::string_view v) { c.pump.wavelength_nm = parse_double("pump.wavelength_nm", v); },
         [](const C& c) { return fmt_double(c.pump.wavelength_nm); }},
        {"pump.linewidth_hz", [](C& c, std::string_view v) { c.pump.linewidth_hz = parse_double("pump.linewidth_hz", v); },
         [](const C& c) { return fmt_double(c.pump.linewidth_hz); }},
        {"pump.shape",
         [](C& c, std::string_view v) {
             c.pump.shape = parse_enum<PumpShape>("pump.shape", v, {{"delta", PumpShape::kDelta}, {"gaussian", PumpShape::kGaussian}});
         },
         [](const C& c) { return std::string(pump_shape_name(c.pump.shape)); }},
        {"filter.center_nm", [](C& c, std::string_view v) { c.filter.center_nm = parse_double("filter.center_nm", v); },
         [](const C& c) { return fmt_double(c.filter.center_nm); }},
        {"filter.bandwidth_nm", [](C& c, std::string_view v) { c.filter.bandwidth_nm = parse_double("filter.bandwidth_nm", v); },
         [](const C& c) { return fmt_double(c.filter.bandwidth_nm); }},
        {"filter.shape",
         [](C& c, std::string_view v) {
             c.filter.shape = parse_enum<FilterShape>(
                 "filter.shape", v, {{"rectangular", FilterShape::kRectangular}, {"gaussian", FilterShape::kGaussian}});
         },
         [](const C& c) { return std::string(filter_shape_name(c.filter.shape)); }},
        {"phasematch.bandwidth_nm",
         [](C& c, std::string_view v) { c.phasematch_bandwidth_nm = parse_double("phasematch.bandwidth_nm", v); },
         [](const C& c) { return fmt_double(c.phasematch_bandwidth_nm); }},
        {"distinguishability", [](C& c, std::string_view v) { c.distinguishability = parse_double("distinguishability", v); },
         [](const C& c) { return fmt_double(c.distinguishability); }},
        {"scan.start", [](C& c, std::string_view v) { c.scan.start = parse_double("scan.start", v); },
         [](const C& c) { return fmt_double(c.scan.start); }},
        {"scan.stop", [](C& c, std::string_view v) { c.scan.stop = parse_double("scan.stop", v); },
         [](const C& c) { return fmt_double(c.scan.stop); }},
        {"scan.step", [](C& c, std::string_view v) { c.scan.step = parse_double("scan.step", v); },
         [](const C& c) { return fmt_double(c.scan.step); }},
        {"scan.unit",
         [](C& c, std::string_view v) {
             c.scan.unit = parse_enum<LengthUnit>("scan.unit", v, {{"nm", LengthUnit::kNanometre}, {"um", LengthUnit::kMicrometre}});
         },
         [](const C& c) { return std::string(units::unit_symbol(c.scan.unit)); }},
        {"rate_scale", [](C& c, std::string_view v) { c.rate_scale = parse_double("rate_scale", v); },
         [](const C& c) { return fmt_double(c.rate_scale); }},
        {"integration_time", [](C& c, std::string_view v) { c.integration_time = parse_double("integration_time", v); },
         [](const C& c) { return fmt_double(c.integration_time); }},
        {"monte_carlo",
         [](C& c, std::string_view v) {
             c.monte_carlo = parse_enum<MonteCarloMode>("monte_carlo", v,
                                                        {{"off", MonteCarloMode::kOff}, {"poisson", MonteCarloMode::kPoisson}});
         },
         [](const C& c) { return std::string(mc_name(c.monte_carlo)); }},
        {"seed",
         [](C& c, std::string_view v) {
             if (v == "none") {
                 c.seed.reset();
             } else {
                 c.seed = parse_u64("seed", v);
             }
         },
         [](const C& c) { return c.seed ? std::to_string(*c.seed) : std::string("none"); }},
        {"grid.points", [](C& c, std::string_view v) { c.grid_points = parse_u64("grid.points", v); },
         [](const C& c) { return std::to_string(c.grid_points); }},
        {"oracle.alpha_re", [](C& c, std::string_view v) { c.oracle.alpha_re = parse_double("oracle.alpha_re", v); },
         [](const C& c) { return fmt_double(c.oracle.alpha_re); }},
        {"oracle.alpha_im", [](C& c, std::string_view v) { c.oracle.alpha_im = parse_double("oracle.alpha_im", v); },
         [](const C& c) { return fmt_double(c.oracle.alpha_im); }},
        {"oracle.points", [](C& c, std::string_view v) { c.oracle.points = parse_u64("oracle.points", v); },
         [](const C& c) { return std::to_string(c.oracle.points); }},
    };
    return table;
}

}  // namespace

std::string_view experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::kHom: return "hom";
        case ExperimentKind::kMzOnePhoton: return "mz_one_photon";
        case ExperimentKind::kMzTwoPhoton: return "mz_two_photon";
        case ExperimentKind::kOracleCheck: return "oracle_check";
    }
    return "unknown";
}

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys = [] {
        std::vector<std::string_view> k;
        for (const auto& b : bindings()) k.push_back(b.key);
        return k;
    }();
    return keys;
}

void ExperimentConfig::validate() const {
    std::vector<std::string> errors;
    auto require = [&](bool ok, std::string message) {
        if (!ok) errors.push_back(std::move(message));
    };
    require(!name.empty() && std::all_of(name.begin(), name.end(),
                                         [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.'; }),
            "name: must be non-empty and use only letters, digits, '_', '-', '.'");
    require(pump.wavelength_nm > 0.0, "pump.wavelength_nm: must be > 0");
    require(pump.linewidth_hz >= 0.0, "pump.linewidth_hz: must be >= 0");
    require(filter.bandwidth_nm > 0.0, "filter.bandwidth_nm: must be > 0");
    require(filter.center_nm > 0.5 * filter.bandwidth_nm, "filter.center_nm: must exceed half the bandwidth");
    require(phasematch_bandwidth_nm >= 0.0 && phasematch_bandwidth_nm < 2.0 * pump.wavelength_nm,
            "phasematch.bandwidth_nm: must be >= 0 and below twice the pump wavelength");
    require(distinguishability >= 0.0 && distinguishability <= 1.0, "distinguishability: must lie in [0, 1]");
    require(scan.step > 0.0, "scan.step: must be > 0");
    require(scan.stop >= scan.start, "scan.stop: must be >= scan.start");
    require(rate_scale > 0.0, "rate_scale: must be > 0");
    require(integration_time > 0.0, "integration_time: must be > 0");
    require(seed.has_value() == (monte_carlo == MonteCarloMode::kPoisson),
            "seed: required when monte_carlo = poisson and not allowed otherwise");
    require(grid_points >= 3 && grid_points % 2 == 1, "grid.points: must be odd and >= 3");
    require(oracle.points >= 1, "oracle.points: must be >= 1");
    if (!errors.empty()) {
        std::string joined = "invalid config:";
        for (const auto& e : errors) joined += "\n  " + e;
        throw ConfigError(joined);
    }
}

SpectralGrid ExperimentConfig::spectral_grid() const {
    return SpectralGrid::centered_on(pump, 4.0 * filter.bandwidth_thz(), grid_points);
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig config;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        line_no++;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto& table = bindings();
        auto it = std::find_if(table.begin(), table.end(), [&](const KeyBinding& b) { return b.key == key; });
        if (it == table.end()) throw ConfigError(fmt::format("line {}: unknown key '{}'", line_no, key));
        if (!seen.emplace(key).second) throw ConfigError(fmt::format("line {}: duplicate key '{}'", line_no, key));
        if (value.empty()) throw ConfigError(fmt::format("line {}: empty value for '{}'", line_no, key));
        it->set(config, value);
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path.string()));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& config) {
    std::string out;
    for (const auto& b : bindings()) out += fmt::format("{} = {}\n", b.key, b.get(config));
    return out;
}

std::vector<std::string_view> preset_names() { return {"fig3", "fig4", "fig5"}; }

std::vector<ExperimentConfig> preset(std::string_view name) {
    ExperimentConfig base;
    base.pump = PumpSpectrum{PumpShape::kGaussian, 861.6, 40e6};
    base.filter = FilterSpectrum{FilterShape::kRectangular, 860.0, 10.0};
    base.phasematch_bandwidth_nm = 20.0;
    // The same photon source feeds every scenario; 0.97 is its measured HOM visibility.
    base.distinguishability = 0.97;
    base.scan.unit = units::LengthUnit::kMicrometre;

    auto mz_pair = [&](std::string_view stem, double center_um) {
        ExperimentConfig one = base;
        one.name = fmt::format("{}_one_photon", stem);
        one.experiment = ExperimentKind::kMzOnePhoton;
        one.scan.start = center_um - 2.5;
        one.scan.stop = center_um + 2.5;
        one.scan.step = 0.043;
        ExperimentConfig two = one;
        two.name = fmt::format("{}_two_photon", stem);
        two.experiment = ExperimentKind::kMzTwoPhoton;
        return std::vector<ExperimentConfig>{one, two};
    };

    if (name == "fig3") {
        ExperimentConfig hom = base;
        hom.name = "fig3_hom";
        hom.experiment = ExperimentKind::kHom;
        hom.scan.start = -150.0;
        hom.scan.stop = 150.0;
        hom.scan.step = 2.0;
        return {hom};
    }
    if (name == "fig4") return mz_pair("fig4", 0.0);
    if (name == "fig5") return mz_pair("fig5", 400.0);
    throw ConfigError(fmt::format("unknown preset '{}' (expected fig3, fig4 or fig5)", name));
}

}  // namespace biphoton
