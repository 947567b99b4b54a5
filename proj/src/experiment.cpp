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

#include "biphoton/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "biphoton/errors.hpp"
#include "biphoton/optics.hpp"

namespace biphoton {

namespace {

using nlohmann::json;

constexpr double kDefaultRateScale = 1000.0;
constexpr double kDefaultIntegrationTime = 1.0;

json config_echo(const ExperimentConfig& config) {
    json echo = json::object();
    const auto text = serialize_config(config);
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto end = text.find('\n', pos);
        const auto line = text.substr(pos, end - pos);
        pos = end + 1;
        const auto eq = line.find(" = ");
        echo[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return echo;
}

json coherence_json(const CoherenceLengths& lengths) {
    json out;
    out["one_photon_um"] = lengths.one_photon_unbounded ? json(nullptr) : json(lengths.one_photon_um);
    out["one_photon_unbounded"] = lengths.one_photon_unbounded;
    out["two_photon_cm"] = lengths.two_photon_unbounded ? json(nullptr) : json(lengths.two_photon_cm);
    out["two_photon_unbounded"] = lengths.two_photon_unbounded;
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError(fmt::format("output path '{}' is not writable", path.string()));
    out << text;
    if (!out) throw ConfigError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace

std::int64_t sample_counts(double rate, double integration_time, std::mt19937_64& rng) {
    const double mean = rate * integration_time;
    if (!(mean > 0.0)) return 0;
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(rng);
}

double oracle_tolerance(AnalyticFormula formula) { return is_coherent_formula(formula) ? 1e-8 : 1e-10; }

std::vector<OracleDeviation> compare_oracles(const std::vector<double>& phi_grid, Complex alpha) {
    if (phi_grid.empty()) throw ConfigError("oracle comparison needs a non-empty phase grid");

    const auto pair_in = StateVector::basis({1, 1});
    const auto single_in = StateVector::basis({0, 1});
    const auto coherent_in = coherent_input(CoherentParams::with_default_truncation(alpha), Mode{1}, 2).state;

    const std::vector<AnalyticFormula> formulas = {AnalyticFormula::kR55Fock, AnalyticFormula::kR45Fock,
                                                   AnalyticFormula::kR5Single, AnalyticFormula::kR55Coherent,
                                                   AnalyticFormula::kR45Coherent};
    std::vector<std::vector<double>> simulated(formulas.size()), analytic(formulas.size());

    for (double phi : phi_grid) {
        const auto u = mz_transfer(phi, 0.0);
        const auto pair = measure_rates(lift_and_evolve(pair_in, u));
        const auto single = measure_rates(lift_and_evolve(single_in, u));
        const auto coherent = measure_rates(lift_and_evolve(coherent_in, u));
        const double sims[] = {pair.r55, pair.r45, single.r5, coherent.r55, coherent.r45};
        for (std::size_t f = 0; f < formulas.size(); f++) {
            simulated[f].push_back(sims[f]);
            const auto a = is_coherent_formula(formulas[f]) ? std::optional<Complex>(alpha) : std::nullopt;
            analytic[f].push_back(analytic_rate(formulas[f], phi, a));
        }
    }

    std::vector<OracleDeviation> out;
    for (std::size_t f = 0; f < formulas.size(); f++) {
        double sa = 0.0, ss = 0.0;
        for (std::size_t i = 0; i < phi_grid.size(); i++) {
            sa += simulated[f][i] * analytic[f][i];
            ss += simulated[f][i] * simulated[f][i];
        }
        OracleDeviation row{formulas[f], ss > 0.0 ? sa / ss : 1.0, 0.0, 0.0};
        double sum_sq = 0.0;
        for (std::size_t i = 0; i < phi_grid.size(); i++) {
            const double d = std::abs(row.scale * simulated[f][i] - analytic[f][i]);
            row.max_deviation = std::max(row.max_deviation, d);
            sum_sq += d * d;
        }
        row.rms_deviation = std::sqrt(sum_sq / static_cast<double>(phi_grid.size()));
        out.push_back(row);
    }
    return out;
}

std::string scan_to_csv(const ScanResult& scan) {
    const bool with_counts = !scan.samples.empty() && scan.samples.front().counts.has_value();
    std::string out = fmt::format("position_{},rate{}\n", units::unit_symbol(scan.unit), with_counts ? ",counts,stderr" : "");
    for (const auto& s : scan.samples) {
        out += fmt::format("{:.12g},{:.12g}", s.position, s.rate);
        if (with_counts) out += fmt::format(",{},{:.12g}", s.counts.value_or(0), s.std_error.value_or(0.0));
        out += '\n';
    }
    return out;
}

std::string oracle_to_csv(const std::vector<OracleDeviation>& rows) {
    std::string out = "formula,scale,max_deviation,rms_deviation\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{:.12g},{:.12g},{:.12g}\n", formula_name(r.formula), r.scale, r.max_deviation,
                           r.rms_deviation);
    }
    return out;
}

RunOutput simulate(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();

    RunOutput result;
    json& report = result.report;
    report["software"] = {{"name", std::string(kSoftwareName)}, {"version", std::string(kSoftwareVersion)}};
    report["experiment"] = std::string(experiment_name(config.experiment));
    report["config"] = config_echo(config);
    report["coherence_lengths"] = coherence_json(coherence_lengths(config.filter, config.pump));

    if (config.experiment == ExperimentKind::kOracleCheck) {
        std::vector<double> phis;
        for (std::size_t i = 0; i < config.oracle.points; i++) {
            phis.push_back(2.0 * units::kTwoPi * static_cast<double>(i) / static_cast<double>(config.oracle.points));
        }
        result.oracle = compare_oracles(phis, Complex{config.oracle.alpha_re, config.oracle.alpha_im});
        json rows = json::array();
        for (const auto& r : result.oracle) {
            const bool ok = r.max_deviation < oracle_tolerance(r.formula);
            result.numerical_failure |= !ok;
            rows.push_back({{"formula", std::string(formula_name(r.formula))},
                            {"scale", r.scale},
                            {"max_deviation", r.max_deviation},
                            {"rms_deviation", r.rms_deviation},
                            {"tolerance", oracle_tolerance(r.formula)},
                            {"pass", ok}});
        }
        report["oracle"] = rows;
    } else {
        const auto bsa = build_biphoton(config.pump, config.phasematch_bandwidth_nm, config.filter,
                                        config.spectral_grid());
        const auto positions = scan_positions(config.scan.start, config.scan.stop, config.scan.step);
        const double p = config.distinguishability;
        ScanResult scan = [&] {
            switch (config.experiment) {
                case ExperimentKind::kHom: return hom_scan(bsa, positions, config.scan.unit, p);
                case ExperimentKind::kMzOnePhoton: return mz_one_photon_scan(bsa, positions, config.scan.unit, p);
                default: return mz_two_photon_scan(bsa, positions, config.scan.unit, p);
            }
        }();
        for (auto& s : scan.samples) s.rate *= config.rate_scale;

        // What the fit sees: expected rates, or measured counts per second.
        ScanResult observed = scan;
        if (config.monte_carlo == MonteCarloMode::kPoisson) {
            std::mt19937_64 rng(*config.seed);
            for (std::size_t i = 0; i < scan.samples.size(); i++) {
                auto& s = scan.samples[i];
                s.counts = sample_counts(s.rate, config.integration_time, rng);
                s.std_error = std::sqrt(static_cast<double>(*s.counts));
                observed.samples[i].rate = static_cast<double>(*s.counts) / config.integration_time;
            }
        }

        if (config.experiment == ExperimentKind::kHom) {
            const auto dip = fit_hom_dip(observed);
            report["hom_dip"] = {{"visibility", dip.visibility},
                                 {"baseline", dip.baseline},
                                 {"center_nm", dip.center_nm},
                                 {"width_nm", dip.width_nm},
                                 {"residual", dip.residual}};
        } else {
            const auto fringe = fit_fringe(observed);
            report["fringe"] = {{"visibility", fringe.visibility},
                                {"period_nm", fringe.period_nm},
                                {"phase_offset", fringe.phase_offset},
                                {"mean", fringe.mean},
                                {"residual", fringe.residual}};
        }
        report["samples"] = scan.samples.size();
        result.scan = std::move(scan);
    }

    json notes = json::array();
    if (config.rate_scale == kDefaultRateScale) {
        notes.push_back("rate_scale = 1000 counts/s is an operational default, not a measured value");
    }
    if (config.integration_time == kDefaultIntegrationTime) {
        notes.push_back("integration_time = 1 s is an operational default, not a measured value");
    }
    report["artifact_defaults"] = notes;

    if (options.include_wall_time) {
        report["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }
    return result;
}

RunOutput run(const ExperimentConfig& config, const std::filesystem::path& out_dir, const RunOptions& options) {
    auto result = simulate(config, options);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw ConfigError(fmt::format("cannot create output directory '{}': {}", out_dir.string(), ec.message()));

    result.csv_path = out_dir / (config.name + ".csv");
    result.report_path = out_dir / (config.name + ".report.json");
    write_text(result.csv_path, result.scan ? scan_to_csv(*result.scan) : oracle_to_csv(result.oracle));
    write_text(result.report_path, result.report.dump(2) + "\n");
    return result;
}

}  // namespace biphoton
