// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include <cstdlib>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "fsoc/errors.hpp"
#include "fsoc/experiments.hpp"
#include "fsoc/version.hpp"

namespace {

namespace ex = fsoc::experiments;

struct CliOptions {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
};

void add_override_flag(CLI::App* cmd, CliOptions& opts, const std::string& key,
                       const std::string& help) {
    cmd->add_option_function<std::string>(
        "--" + key, [&opts, key](const std::string& value) { opts.overrides.emplace_back(key, value); },
        help);
}

int run_experiment(const std::string& experiment, const CliOptions& opts) {
    ex::ExperimentConfig cfg;

    // The environment variable overrides the config path only.
    std::string path = opts.config_path;
    if (const char* env = std::getenv("FSOC_CONFIG")) path = env;
    if (!path.empty()) cfg = ex::parse_config_file(path);

    ex::apply_override(cfg, "experiment", experiment);
    for (const auto& [key, value] : opts.overrides) ex::apply_override(cfg, key, value);

    return ex::run(cfg, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fsoc-lantern: coherent FSO link modeling with photonic-lantern receivers"};
    app.set_version_flag("--version", std::string("fsoc ") + fsoc::kVersion);
    app.require_subcommand(1);

    CliOptions opts;
    std::string experiment;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path,
                        "key = value config file (FSOC_CONFIG overrides this path)");
        add_override_flag(cmd, opts, "turbulence", "preset: moderate | strong");
        add_override_flag(cmd, opts, "alpha", "explicit large-scale shape (overrides preset)");
        add_override_flag(cmd, opts, "beta", "explicit small-scale shape (overrides preset)");
        add_override_flag(cmd, opts, "n_smf", "number of lantern SMF ports (N >= 2)");
        add_override_flag(cmd, opts, "sigma2", "comma list of Gaussian variances: 0 | value | inf");
        add_override_flag(cmd, opts, "xi_pl", "lantern loss factor in (0,1]");
        add_override_flag(cmd, opts, "zeta_ratio", "zeta_M / zeta_S coupling-efficiency ratio");
        add_override_flag(cmd, opts, "eta_ratio", "eta_S / eta_M mixing-efficiency ratio");
        add_override_flag(cmd, opts, "combiners", "comma subset of sc,egc,mrc");
        add_override_flag(cmd, opts, "snr_grid_db", "gamma_bar_0 grid: lo:step:hi or comma list");
        add_override_flag(cmd, opts, "mc_samples", "Monte-Carlo samples per estimate");
        add_override_flag(cmd, opts, "seed", "master seed (required for MC-backed runs)");
        add_override_flag(cmd, opts, "output", "output CSV path");
        add_override_flag(cmd, opts, "threads", "worker pool size for sweep points");
        cmd->callback([&, cmd] { experiment = cmd->get_name(); });
        return cmd;
    };

    add_common(app.add_subcommand("photon-sim", "photon-assignment histogram + correlation"));
    auto* photon = app.get_subcommand("photon-sim");
    add_override_flag(photon, opts, "n_photons", "photons per trial (M)");
    add_override_flag(photon, opts, "n_trials", "number of trials (L)");
    add_override_flag(photon, opts, "hist_bins", "histogram bins over [0,1]");

    add_common(app.add_subcommand("snr-sweep", "average SNR of all receivers vs gamma_bar_0"));
    add_common(app.add_subcommand("ber-curve", "BER vs gamma_bar_0 for all receivers"));

    auto* gain = add_common(app.add_subcommand("gain-map", "PL-vs-SMF/MMF SNR gain maps"));
    add_override_flag(gain, opts, "zeta_ratio_grid", "zeta_M/zeta_S grid, lo:step:hi");
    add_override_flag(gain, opts, "eta_ratio_grid", "eta_S/eta_M grid, lo:step:hi");
    add_override_flag(gain, opts, "xi_pl_grid", "xi_PL grid, lo:step:hi");

    add_common(app.add_subcommand("validate", "cross-method agreement suite"));

    CLI11_PARSE(app, argc, argv);

    try {
        return run_experiment(experiment, opts);
    } catch (const ex::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const fsoc::numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
