#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bohmrotor/grid.hpp"
#include "bohmrotor/wave_field.hpp"

namespace bohmrotor::experiment {

struct GridConfig {
    int n1 = 1024;
    int n2 = 128;
    int hbar_numerator = 11;       // hbar = 2 pi a / n1
    std::optional<double> hbar;    // overrides hbar_numerator when set
};

struct InitialConfig {
    std::optional<int> m1;  // default: pi/2 snapped to the lattice
    std::optional<int> m2;
    double q_offset = kPi / 4.0;
};

struct RunConfig {
    int n_periods = 100;
    double traj_dt = 1e-3;
    double reject_threshold = 0.1;
    std::uint64_t seed = 1;
    std::string probe_layout = "line:0:20";
};

struct OutputConfig {
    std::string directory;
    std::string preset;
};

struct ExperimentConfig {
    std::string profile = "desk";
    GridConfig grid;
    ModelParams model{2.0, 0.9, 1.0, 0.2};
    InitialConfig initial;
    RunConfig run;
    OutputConfig output;

    /// Throws ConfigError on any invalid combination.
    void validate() const;
    GridSpec grid_spec() const;
    InitialStateSpec initial_state() const;
    /// Canonical key/value listing. output.directory is left out so that the
    /// same experiment hashes identically wherever it is written.
    std::vector<std::pair<std::string, std::string>> echo() const;
    std::uint64_t hash() const;
};

/// Names accepted by `profile`.
const std::vector<std::string>& profile_names();
ExperimentConfig profile_defaults(std::string_view profile);

/// Applies one dotted key. Throws ConfigError for unknown keys or bad values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Applies key=value pairs; a `profile` entry is applied first so it never
/// clobbers explicit settings.
void apply_settings(ExperimentConfig& config, const std::vector<std::pair<std::string, std::string>>& settings);

/// Splits "key=value". Throws ConfigError when there is no '='.
std::pair<std::string, std::string> split_assignment(std::string_view text);

/// INI text with optional sections grid, model, initial, run, output.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

} // namespace bohmrotor::experiment
