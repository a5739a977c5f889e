#pragma once

// Parameter sweeps producing CSV tables of Monte Carlo estimates and
// closed-form bounds.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace sicnet {

/// Parameters shared by every point of a sweep. When `alpha` is set, beta is
/// derived as (2 + b) / alpha (a two-dimensional network).
struct SweepParams {
    double beta = 0.5;
    std::optional<double> alpha;
    double b = 0.0;
    double theta = 1.0;  ///< linear
    double noise_w = 0.0;
    double a_bar = 1.0;  ///< intensity scale of the path loss process
    double eta = 1.0;
    std::size_t n = 1;   ///< SIC layers used by the scalar `n` sweep
    std::size_t K = 0;   ///< series truncation, 0 = automatic
};

struct SweepSpec {
    std::string name = "sweep";
    /// theta_db | theta | beta | eta | alpha | b | W | n
    std::string variable = "theta_db";
    double start = -10.0;
    double stop = 20.0;
    std::size_t count = 31;
    bool log_spacing = false;
    /// Explicit sweep values; overrides the range when non-empty.
    std::vector<double> values;

    /// Optional second variable: every sweep is repeated for each value.
    std::string series_variable;
    std::vector<double> series_values;

    SweepParams params;
    std::vector<std::size_t> ks{1};
    /// SIC layers for coverage estimates; 0 means unlimited.
    std::vector<std::size_t> sic_layers{0};

    /// pk | joint_tail | en | throughput | laplace | coverage | avg_throughput
    std::vector<std::string> estimates;
    /// Stable bound names; per-k bounds get a _k<k> suffix, per-n bounds _n<n>.
    std::vector<std::string> bounds;

    std::size_t replicates = 10000;
    std::uint64_t master_seed = 1;
    std::size_t workers = 1;
    std::size_t n_points = 1000;
    std::string output;
};

/// Throws std::invalid_argument describing the first problem found.
void validate(const SweepSpec& spec);

/// Sweep points in order (range or explicit values).
std::vector<double> sweep_values(const SweepSpec& spec);

/// Column names of the CSV, in order.
std::vector<std::string> sweep_columns(const SweepSpec& spec);

/// Writes the table to `os`.
void run_sweep(const SweepSpec& spec, std::ostream& os);
/// Writes the table to spec.output; the file is removed if anything fails.
void run_sweep(const SweepSpec& spec);

SweepSpec sweep_from_json(const nlohmann::json& j, SweepSpec base = {});
nlohmann::json sweep_to_json(const SweepSpec& spec);

/// Names accepted by figure_preset.
std::vector<std::string> figure_names();
/// Throws std::invalid_argument for unknown names.
SweepSpec figure_preset(const std::string& name);

}  // namespace sicnet
