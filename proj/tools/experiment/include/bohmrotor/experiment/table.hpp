#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bohmrotor/experiment/config.hpp"

namespace bohmrotor::experiment {

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::string file;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;
};

/// '#' metadata block (config hash, parameter echo, table extras), header row, rows.
std::string render_csv(const Table& table, const ExperimentConfig& config);

/// Writes every table into `directory`, creating it if needed. Returns the paths.
std::vector<std::filesystem::path> write_tables(const std::filesystem::path& directory,
                                                const std::vector<Table>& tables, const ExperimentConfig& config);

} // namespace bohmrotor::experiment
