#include "bohmrotor/experiment/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "bohmrotor/errors.hpp"
#include "bohmrotor/experiment/format.hpp"
#include "bohmrotor/experiment/presets.hpp"
#include "bohmrotor/experiment/seeding.hpp"

namespace bohmrotor::experiment {

namespace {

int to_int(std::string_view key, std::string_view value) {
    const long long v = parse_integer(value);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ConfigError(std::string(key) + " out of range");
    }
    return static_cast<int>(v);
}

int resolve_mode(const GridSpec& grid, const std::optional<int>& m, Axis axis) {
    if (m) {
        if (!grid.in_band(axis, *m)) {
            throw ConfigError("initial momentum index " + std::to_string(*m) + " outside the grid band");
        }
        return *m;
    }
    try {
        return snap_momentum(grid, kPi / 2.0, axis);
    } catch (const RangeError& e) {
        throw ConfigError(std::string("default initial momentum pi/2: ") + e.what());
    }
}

} // namespace

const std::vector<std::string>& profile_names() {
    static const std::vector<std::string> names{"desk", "paper"};
    return names;
}

ExperimentConfig profile_defaults(std::string_view profile) {
    ExperimentConfig config;
    config.profile = std::string(profile);
    if (profile == "desk") {
        return config;
    }
    if (profile == "paper") {
        config.grid = {4096, 512, 43, std::nullopt};
        config.run.traj_dt = 2.5e-6;
        return config;
    }
    throw ConfigError("unknown profile '" + std::string(profile) + "'");
}

GridSpec ExperimentConfig::grid_spec() const {
    if (grid.hbar) {
        return make_grid(grid.n1, grid.n2, *grid.hbar);
    }
    if (grid.hbar_numerator <= 0) {
        throw ConfigError("grid.hbar_numerator must be positive");
    }
    return make_grid(grid.n1, grid.n2, kTwoPi * grid.hbar_numerator / grid.n1);
}

InitialStateSpec ExperimentConfig::initial_state() const {
    const GridSpec spec = grid_spec();
    return {resolve_mode(spec, initial.m1, Axis::Q1), resolve_mode(spec, initial.m2, Axis::Q2), initial.q_offset};
}

void ExperimentConfig::validate() const {
    profile_defaults(profile);
    grid_spec();
    model.validate();
    if (!std::isfinite(initial.q_offset)) {
        throw ConfigError("initial.q_offset must be finite");
    }
    initial_state();
    if (run.n_periods < 1) {
        throw ConfigError("run.n_periods must be at least 1");
    }
    if (!(run.traj_dt > 0.0) || run.traj_dt > model.period) {
        throw ConfigError("run.traj_dt must lie in (0, T]");
    }
    if (!(run.reject_threshold > 0.0)) {
        throw ConfigError("run.reject_threshold must be positive");
    }
    ProbeLayout::parse(run.probe_layout);
    if (!output.preset.empty()) {
        const auto& names = preset_names();
        if (std::find(names.begin(), names.end(), output.preset) == names.end()) {
            throw ConfigError("unknown preset '" + output.preset + "'");
        }
    }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
    const InitialStateSpec init = initial_state();
    std::vector<std::pair<std::string, std::string>> out{
        {"profile", profile},
        {"grid.n1", std::to_string(grid.n1)},
        {"grid.n2", std::to_string(grid.n2)},
        {"grid.hbar_numerator", std::to_string(grid.hbar_numerator)},
    };
    if (grid.hbar) {
        out.emplace_back("grid.hbar", format_double(*grid.hbar));
    }
    out.insert(out.end(), {
                              {"model.k1", format_double(model.k1)},
                              {"model.k2", format_double(model.k2)},
                              {"model.T", format_double(model.period)},
                              {"model.c_pp", format_double(model.c_pp)},
                              {"initial.m1", std::to_string(init.m1)},
                              {"initial.m2", std::to_string(init.m2)},
                              {"initial.q_offset", format_double(initial.q_offset)},
                              {"run.n_periods", std::to_string(run.n_periods)},
                              {"run.traj_dt", format_double(run.traj_dt)},
                              {"run.reject_threshold", format_double(run.reject_threshold)},
                              {"run.seed", std::to_string(run.seed)},
                              {"run.probe_layout", run.probe_layout},
                              {"output.preset", output.preset},
                          });
    return out;
}

std::uint64_t ExperimentConfig::hash() const {
    std::string text;
    for (const auto& [key, value] : echo()) {
        text += key;
        text += '=';
        text += value;
        text += '\n';
    }
    return fnv1a(text);
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
    if (key == "profile") {
        const OutputConfig output = config.output;
        config = profile_defaults(value);
        config.output = output;
    } else if (key == "grid.n1") {
        config.grid.n1 = to_int(key, value);
    } else if (key == "grid.n2") {
        config.grid.n2 = to_int(key, value);
    } else if (key == "grid.hbar_numerator") {
        config.grid.hbar_numerator = to_int(key, value);
    } else if (key == "grid.hbar") {
        config.grid.hbar = parse_double(value);
    } else if (key == "model.k1") {
        config.model.k1 = parse_double(value);
    } else if (key == "model.k2") {
        config.model.k2 = parse_double(value);
    } else if (key == "model.T") {
        config.model.period = parse_double(value);
    } else if (key == "model.c_pp") {
        config.model.c_pp = parse_double(value);
    } else if (key == "initial.m1") {
        config.initial.m1 = to_int(key, value);
    } else if (key == "initial.m2") {
        config.initial.m2 = to_int(key, value);
    } else if (key == "initial.q_offset") {
        config.initial.q_offset = parse_double(value);
    } else if (key == "run.n_periods") {
        config.run.n_periods = to_int(key, value);
    } else if (key == "run.traj_dt") {
        config.run.traj_dt = parse_double(value);
    } else if (key == "run.reject_threshold") {
        config.run.reject_threshold = parse_double(value);
    } else if (key == "run.seed") {
        config.run.seed = parse_unsigned(value);
    } else if (key == "run.probe_layout") {
        config.run.probe_layout = std::string(value);
    } else if (key == "output.directory") {
        config.output.directory = std::string(value);
    } else if (key == "output.preset") {
        config.output.preset = std::string(value);
    } else {
        throw ConfigError("unknown key '" + std::string(key) + "'");
    }
}

void apply_settings(ExperimentConfig& config, const std::vector<std::pair<std::string, std::string>>& settings) {
    for (const auto& [key, value] : settings) {
        if (key == "profile") {
            apply_setting(config, key, value);
        }
    }
    for (const auto& [key, value] : settings) {
        if (key != "profile") {
            apply_setting(config, key, value);
        }
    }
}

std::pair<std::string, std::string> split_assignment(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("expected key=value, got '" + std::string(text) + "'");
    }
    return {std::string(text.substr(0, eq)), std::string(text.substr(eq + 1))};
}

ExperimentConfig parse_config(std::string_view text) {
    boost::property_tree::ptree tree;
    std::istringstream stream{std::string(text)};
    try {
        boost::property_tree::ini_parser::read_ini(stream, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("config syntax: ") + e.what());
    }
    std::vector<std::pair<std::string, std::string>> settings;
    for (const auto& [name, node] : tree) {
        if (node.empty()) {
            settings.emplace_back(name, node.data());
            continue;
        }
        for (const auto& [key, leaf] : node) {
            settings.emplace_back(name + "." + key, leaf.data());
        }
    }
    ExperimentConfig config;
    apply_settings(config, settings);
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace bohmrotor::experiment
