#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bohmrotor/experiment/config.hpp"
#include "bohmrotor/experiment/table.hpp"

namespace bohmrotor::experiment {

const std::vector<std::string>& preset_names();

/// Profile defaults, then the preset's own defaults, then `overrides`.
ExperimentConfig preset_config(std::string_view preset,
                               const std::vector<std::pair<std::string, std::string>>& overrides);

using ProgressFn = std::function<void(const std::string&)>;

/// Runs config.output.preset. Pure computation: nothing touches the filesystem.
std::vector<Table> run_preset(const ExperimentConfig& config, const ProgressFn& progress = {});

} // namespace bohmrotor::experiment
