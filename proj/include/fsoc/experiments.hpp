// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef FSOC_EXPERIMENTS_HPP
#define FSOC_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsoc::experiments {

/// Configuration error naming the offending field (CLI exit code 1).
class config_error : public std::runtime_error {
  public:
    config_error(std::string field, const std::string& what)
        : std::runtime_error("config field '" + field + "': " + what),
          field_(std::move(field)) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

enum class ExperimentKind { photon_sim, snr_sweep, ber_curve, gain_map, validate };

/// Flat experiment description. Defaults encode the reference operating
/// point: N = 10, xi_PL = 0.8, zeta_M/zeta_S = 6, eta_S/eta_M = 5,
/// moderate turbulence, sigma2 in {0, 0.01, inf}.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::validate;

    std::string turbulence = "moderate";  // preset name
    std::optional<double> alpha;          // explicit (alpha, beta) override the preset
    std::optional<double> beta;

    int n_smf = 10;
    std::vector<double> sigma2_list = {0.0, 0.01,
                                       std::numeric_limits<double>::infinity()};
    double xi_pl = 0.8;

    double zeta_ratio = 6.0;  // zeta_M / zeta_S
    double eta_ratio = 5.0;   // eta_S / eta_M

    std::vector<std::string> combiners = {"sc", "egc", "mrc"};
    std::vector<double> snr_grid_db;  // gamma_bar_0 grid; default set per experiment

    std::int64_t mc_samples = 200000;
    std::optional<std::uint64_t> seed;  // mandatory for MC-backed experiments
    std::string output_path = "out.csv";
    int threads = 1;

    // photon-sim specific
    std::int64_t n_photons = 500;
    std::int64_t n_trials = 100000;
    int hist_bins = 100;

    // gain-map grids, encoded lo:step:hi
    std::string zeta_ratio_grid = "0:1:20";
    std::string eta_ratio_grid = "4:0.5:8";
    std::string xi_pl_grid = "0:0.1:1";

    double alpha_or_preset() const;
    double beta_or_preset() const;

    /// Canonical flat serialization (sorted keys); basis of config_hash.
    std::string canonical_string() const;
};

/// Parse "key = value" lines ('#' comments, blank lines ignored).
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

/// Apply one key=value override (same keys as the config file).
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// FNV-1a hash of the canonical serialization; stamped into every CSV.
std::uint64_t config_hash(const ExperimentConfig& cfg);

/// "lo:step:hi" or comma list -> ordered grid.
std::vector<double> parse_grid(const std::string& text, const std::string& field);

std::string sigma2_tag(double sigma2);

// Experiment runners. Each returns the complete CSV contents; byte-identical
// output for identical (config, seed).
std::string run_photon_sim_csv(const ExperimentConfig& cfg);
std::string run_snr_sweep_csv(const ExperimentConfig& cfg);
std::string run_ber_curve_csv(const ExperimentConfig& cfg);
std::string run_gain_map_csv(const ExperimentConfig& cfg);

struct ValidationRow {
    std::string name;
    bool pass;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    bool all_pass() const;
};

/// Cross-method agreement suite (series vs integral vs asymptotic vs MC,
/// truncation-bound soundness, decay slope).
ValidationReport run_validation(const ExperimentConfig& cfg);

/// Dispatch on cfg.experiment: write CSV to cfg.output_path (or print the
/// validation table to `out`). Returns the process exit code: 0 success,
/// 3 validation failure. Config and numeric errors propagate as exceptions.
int run(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace fsoc::experiments

#endif
