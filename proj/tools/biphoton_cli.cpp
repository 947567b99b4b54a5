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

// Experiment runner.
//
//   biphoton run --preset fig4 --out results/
//   biphoton run --config my.cfg --monte-carlo --seed 7
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.
// BIPHOTON_OUT_DIR sets the output directory when --out is not given.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "biphoton/errors.hpp"
#include "biphoton/experiment.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

void print_summary(const biphoton::ExperimentConfig& config, const biphoton::RunOutput& out) {
    const auto& report = out.report;
    std::cout << fmt::format("{} [{}]\n", config.name, biphoton::experiment_name(config.experiment));
    if (report.contains("fringe")) {
        std::cout << fmt::format("  period {:.2f} nm, visibility {:.4f}\n", report["fringe"]["period_nm"].get<double>(),
                                 report["fringe"]["visibility"].get<double>());
    }
    if (report.contains("hom_dip")) {
        std::cout << fmt::format("  dip visibility {:.4f}, first zero at {:.2f} um\n",
                                 report["hom_dip"]["visibility"].get<double>(),
                                 report["hom_dip"]["width_nm"].get<double>() * 1e-3);
    }
    for (const auto& row : out.oracle) {
        std::cout << fmt::format("  {:<13} max |sim - analytic| = {:.3e}\n", biphoton::formula_name(row.formula),
                                 row.max_deviation);
    }
    std::cout << "  wrote " << out.csv_path.string() << " and " << out.report_path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-mode linear-optics simulator for biphoton interference experiments"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "Run an experiment from a config file or a built-in preset");
    std::string config_path;
    std::string preset_name;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    bool monte_carlo = false;
    bool timing = false;
    std::string format = "csv";

    auto* config_opt = run_cmd->add_option("--config", config_path, "Config file (key = value)");
    auto* preset_opt =
        run_cmd->add_option("--preset", preset_name, "Built-in scenario")->check(CLI::IsMember({"fig3", "fig4", "fig5"}));
    config_opt->excludes(preset_opt);
    run_cmd->add_option("--out", out_dir, "Output directory (default: $BIPHOTON_OUT_DIR or ./out)");
    run_cmd->add_option("--seed", seed, "Seed for Poisson counting noise");
    run_cmd->add_flag("--monte-carlo", monte_carlo, "Add Poisson counting noise to every sample");
    run_cmd->add_option("--format", format, "Scan output format")->check(CLI::IsMember({"csv"}));
    run_cmd->add_flag("--timing", timing, "Record wall time in the report (breaks byte-identical reruns)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (out_dir.empty()) {
        const char* env = std::getenv("BIPHOTON_OUT_DIR");
        out_dir = env && *env ? env : "out";
    }

    try {
        std::vector<biphoton::ExperimentConfig> configs;
        if (!config_path.empty()) {
            configs.push_back(biphoton::load_config(config_path));
        } else if (!preset_name.empty()) {
            configs = biphoton::preset(preset_name);
        } else {
            throw biphoton::ConfigError("one of --config or --preset is required");
        }

        bool failed = false;
        for (auto& config : configs) {
            if (monte_carlo) config.monte_carlo = biphoton::MonteCarloMode::kPoisson;
            if (seed) config.seed = seed;
            config.validate();
            const auto out = biphoton::run(config, out_dir, {timing});
            print_summary(config, out);
            failed |= out.numerical_failure;
        }
        if (failed) {
            std::cerr << "error: oracle deviation above tolerance\n";
            return kExitNumerical;
        }
    } catch (const biphoton::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const biphoton::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
