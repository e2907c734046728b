#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <boost/program_options.hpp>

#include "bohmrotor/errors.hpp"
#include "bohmrotor/experiment/config.hpp"
#include "bohmrotor/experiment/format.hpp"
#include "bohmrotor/experiment/presets.hpp"
#include "bohmrotor/experiment/table.hpp"

namespace po = boost::program_options;
namespace ex = bohmrotor::experiment;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

const char* const kUsage =
    "usage:\n"
    "  bohmrotor run --preset <name> [--set key=value]... --out <dir>\n"
    "  bohmrotor validate --config <file>\n";

po::variables_map parse(const po::options_description& options, const std::vector<std::string>& args) {
    po::variables_map vm;
    po::store(po::command_line_parser(args).options(options).run(), vm);
    po::notify(vm);
    return vm;
}

int run(const std::vector<std::string>& args) {
    po::options_description options("run");
    options.add_options()("preset", po::value<std::string>()->required(), "preset name")(
        "set", po::value<std::vector<std::string>>()->composing(), "override key=value")(
        "out", po::value<std::string>()->required(), "output directory");
    const po::variables_map vm = parse(options, args);

    std::vector<std::pair<std::string, std::string>> overrides;
    if (vm.count("set")) {
        for (const auto& item : vm["set"].as<std::vector<std::string>>()) {
            overrides.push_back(ex::split_assignment(item));
        }
    }
    ex::ExperimentConfig config = ex::preset_config(vm["preset"].as<std::string>(), overrides);
    config.output.directory = vm["out"].as<std::string>();
    std::filesystem::create_directories(config.output.directory);

    const auto tables = ex::run_preset(config, [](const std::string& line) { std::cerr << line << '\n'; });
    for (const auto& path : ex::write_tables(config.output.directory, tables, config)) {
        std::cout << path.string() << '\n';
    }
    return kOk;
}

int validate(const std::vector<std::string>& args) {
    po::options_description options("validate");
    options.add_options()("config", po::value<std::string>()->required(), "config file");
    const po::variables_map vm = parse(options, args);
    const ex::ExperimentConfig config = ex::load_config(vm["config"].as<std::string>());
    std::cout << "config_hash=" << ex::format_hex(config.hash()) << '\n';
    for (const auto& [key, value] : config.echo()) {
        std::cout << key << '=' << value << '\n';
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::string> all(argv + 1, argv + argc);
    if (all.empty()) {
        std::cerr << kUsage;
        return kConfigError;
    }
    const std::string command = all.front();
    const std::vector<std::string> rest(all.begin() + 1, all.end());
    try {
        if (command == "run") {
            return run(rest);
        }
        if (command == "validate") {
            return validate(rest);
        }
        if (command == "--help" || command == "-h") {
            std::cout << kUsage;
            return kOk;
        }
        std::cerr << "unknown command '" << command << "'\n" << kUsage;
        return kConfigError;
    } catch (const po::error& e) {
        std::cerr << "error: " << e.what() << '\n' << kUsage;
        return kConfigError;
    } catch (const bohmrotor::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kRuntimeError;
    }
}
