#include "bohmrotor/experiment/table.hpp"

#include <fstream>

#include "bohmrotor/errors.hpp"
#include "bohmrotor/experiment/format.hpp"

namespace bohmrotor::experiment {

namespace {

std::string render_cell(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) {
        return format_double(*d);
    }
    if (const auto* i = std::get_if<long long>(&cell)) {
        return std::to_string(*i);
    }
    return std::get<std::string>(cell);
}

} // namespace

std::string render_csv(const Table& table, const ExperimentConfig& config) {
    std::string out;
    auto line = [&out](const std::string& text) {
        out += text;
        out += '\n';
    };
    line("# bohmrotor " + table.file);
    line("# config_hash=" + format_hex(config.hash()));
    for (const auto& [key, value] : config.echo()) {
        line("# " + key + "=" + value);
    }
    line("# hbar=" + format_double(config.grid_spec().hbar()));
    for (const auto& [key, value] : table.metadata) {
        line("# " + key + "=" + value);
    }
    std::string header;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        header += (i ? "," : "") + table.columns[i];
    }
    line(header);
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::logic_error("row width does not match header in " + table.file);
        }
        std::string text;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                text += ',';
            }
            text += render_cell(row[i]);
        }
        line(text);
    }
    return out;
}

std::vector<std::filesystem::path> write_tables(const std::filesystem::path& directory,
                                                const std::vector<Table>& tables, const ExperimentConfig& config) {
    std::filesystem::create_directories(directory);
    std::vector<std::filesystem::path> written;
    for (const auto& table : tables) {
        const std::filesystem::path path = directory / table.file;
        const std::string text = render_csv(table, config);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.close();
        if (!out) {
            throw std::runtime_error("cannot write " + path.string());
        }
        written.push_back(path);
    }
    return written;
}

} // namespace bohmrotor::experiment
