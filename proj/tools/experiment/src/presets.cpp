#include "bohmrotor/experiment/presets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "bohmrotor/classical.hpp"
#include "bohmrotor/errors.hpp"
#include "bohmrotor/evolve.hpp"
#include "bohmrotor/experiment/format.hpp"
#include "bohmrotor/experiment/seeding.hpp"
#include "bohmrotor/observables.hpp"

namespace bohmrotor::experiment {

namespace {

using Settings = std::vector<std::pair<std::string, std::string>>;

const std::map<std::string, Settings, std::less<>>& preset_defaults() {
    static const std::map<std::string, Settings, std::less<>> table{
        {"fig1", {{"run.n_periods", "100"}}},
        {"fig2", {{"run.n_periods", "100"}}},
        {"fig3a", {{"run.n_periods", "1"}, {"run.probe_layout", "line:0:20"}}},
        {"fig3bc", {{"run.n_periods", "1"}, {"run.probe_layout", "line:pi:20;line:0:20"}}},
        {"fig4", {{"run.n_periods", "1"}, {"run.probe_layout", "line:pi:500;line:0:500"}}},
        {"fig5", {{"run.n_periods", "30"}, {"run.probe_layout", "grid:20:500"}}},
        {"fig6", {{"run.n_periods", "2"}, {"run.probe_layout", "grid:10:5000"}}},
        {"fig7", {{"run.n_periods", "100"}}},
        {"classical", {{"run.n_periods", "100"}, {"run.probe_layout", "born:1000"}}},
    };
    return table;
}

struct Model {
    std::string tag;
    ModelParams params;
};

Model single_model(const ExperimentConfig& config) {
    return {"No", ModelParams{config.model.k1, 0.0, config.model.period, 0.0}};
}

Model coupled_model(const ExperimentConfig& config) { return {"P-P", config.model}; }

WaveField initial_field(const ExperimentConfig& config) {
    return init_momentum_eigenstate(config.grid_spec(), config.initial_state());
}

void report(const ProgressFn& progress, const std::string& text) {
    if (progress) {
        progress(text);
    }
}

WaveField evolve_periods(WaveField field, const ModelParams& params, int periods) {
    for (int n = 0; n < periods; ++n) {
        field = step_period(field, params);
    }
    return field;
}

double wrap(double q) {
    const double r = q - kTwoPi * std::floor(q / kTwoPi);
    return r >= kTwoPi ? 0.0 : r;
}

std::string status_name(ProbeStatus status) { return to_string(status); }

Table fig1(const ExperimentConfig& config, const ProgressFn& progress) {
    Table table{"q_moment.csv", {"n", "Q", "model_tag"}, {}, {}};
    for (const Model& model : {single_model(config), coupled_model(config)}) {
        report(progress, "fig1: " + model.tag);
        MomentSeries series;
        WaveField field = initial_field(config);
        series.append(0, momentum_moment(field));
        for (int n = 1; n <= config.run.n_periods; ++n) {
            field = step_period(field, model.params);
            series.append(n, momentum_moment(field));
        }
        for (const auto& entry : series.entries) {
            table.rows.push_back({static_cast<long long>(entry.n), entry.q, model.tag});
        }
    }
    return table;
}

Table fig2(const ExperimentConfig& config, const ProgressFn& progress) {
    Table table{"marginal.csv", {"model_tag", "m1", "p1", "mass"}, {}, {}};
    table.metadata.emplace_back("n", std::to_string(config.run.n_periods));
    const GridSpec grid = config.grid_spec();
    for (const Model& model : {single_model(config), coupled_model(config)}) {
        report(progress, "fig2: " + model.tag);
        const WaveField field = evolve_periods(initial_field(config), model.params, config.run.n_periods);
        const Histogram1D h = momentum_marginal(field);
        for (std::size_t i = 0; i < h.masses.size(); ++i) {
            const long long m = grid.min_mode(Axis::Q1) + static_cast<long long>(i);
            table.rows.push_back({model.tag, m, grid.momentum(static_cast<int>(m)), h.masses[i]});
        }
    }
    return table;
}

Table fig7(const ExperimentConfig& config, const ProgressFn& progress) {
    report(progress, "fig7: P-P");
    const Model model = coupled_model(config);
    const WaveField field = evolve_periods(initial_field(config), model.params, config.run.n_periods);
    const Histogram1D h = bohm_momentum_distribution(field, lattice_bins(config.grid_spec()));
    Table table{"fq.csv", {"p1", "bin_lower", "bin_upper", "mass"}, {}, {}};
    table.metadata = {{"n", std::to_string(config.run.n_periods)},
                      {"model_tag", model.tag},
                      {"binned_mass", format_double(h.total)},
                      {"excluded_mass", format_double(h.excluded)},
                      {"outside_mass", format_double(h.outside)}};
    for (std::size_t i = 0; i < h.masses.size(); ++i) {
        table.rows.push_back({h.center(i), h.bin_edges[i], h.bin_edges[i + 1], h.masses[i]});
    }
    return table;
}

// Sub-period snapshots every T/10 from T to (1 + n_periods) T.
Table trajectories(const ExperimentConfig& config, const Model& model, const ProgressFn& progress) {
    const int periods = config.run.n_periods;
    const PeriodSchedule schedule(model.params, initial_field(config), 1, periods);
    const double period = model.params.period;
    ProbeSet probes = seed_probes(ProbeLayout::parse(config.run.probe_layout), schedule.post_kick(1), config.run.seed);
    Table table{"trajectories.csv", {"model_tag", "probe_id", "t", "q1", "q2", "status"}, {}, {}};
    auto record = [&](double t) {
        for (const Probe& p : probes.probes) {
            table.rows.push_back({model.tag, static_cast<long long>(p.id), t, p.q1, p.q2, status_name(p.status)});
        }
    };
    record(probes.time);
    for (int n = 1; n <= periods; ++n) {
        report(progress, "trajectories: period " + std::to_string(n) + "/" + std::to_string(periods));
        for (int k = 1; k <= 10; ++k) {
            const double t0 = probes.time;
            const double t1 = (n + k / 10.0) * period;
            probes = advance_probes(std::move(probes), schedule.post_kick(n), model.params, t0, t1, config.run.traj_dt);
            record(t1);
        }
    }
    return table;
}

Table fig5(const ExperimentConfig& config, const ProgressFn& progress) {
    const int seed_period = config.run.n_periods;
    const ProbeLayout layout = ProbeLayout::parse(config.run.probe_layout);
    Table table{"force.csv",
                {"model_tag", "probe_id", "q1", "q2", "V1_prev", "V1", "F1", "deviation", "status", "converged"},
                {},
                {}};
    table.metadata.emplace_back("n", std::to_string(seed_period));
    for (const Model& model : {single_model(config), coupled_model(config)}) {
        report(progress, "fig5: " + model.tag);
        const PeriodSchedule schedule(model.params, initial_field(config), seed_period - 1, seed_period);
        const WaveField& seed_field = schedule.post_kick(seed_period);
        // q2 does not enter the single-rotor dynamics, so its probes sit on one line.
        const ProbeSet seeded =
            model.tag == "No"
                ? seed_probes(ProbeLayout{{UniformLine{0.0, static_cast<int>(layout.count())}}}, seed_field,
                              config.run.seed)
                : seed_probes(layout, seed_field, config.run.seed);
        const ConvergenceResult result =
            run_with_convergence(seeded, schedule, {1, 1}, config.run.traj_dt, config.run.reject_threshold);
        const auto records = trajectory_records(result.probes, model.params.period);
        long long rejected = 0;
        long long nodes = 0;
        for (std::size_t i = 0; i < records.size(); ++i) {
            const TrajectoryRecord& record = records[i];
            double v_prev = std::numeric_limits<double>::quiet_NaN();
            double v = v_prev;
            double f = v_prev;
            if (record.status != ProbeStatus::NodeContact) {
                v_prev = averaged_velocity(record, Axis::Q1, seed_period - 1);
                v = averaged_velocity(record, Axis::Q1, seed_period);
                f = effective_kick(record, Axis::Q1, seed_period);
            }
            rejected += record.status == ProbeStatus::Rejected;
            nodes += record.status == ProbeStatus::NodeContact;
            const Probe& start = seeded.probes[i];
            table.rows.push_back({model.tag, static_cast<long long>(record.probe_id), wrap(start.q1), wrap(start.q2),
                                  v_prev, v, f, result.deviation[i], status_name(record.status),
                                  std::string(record.status == ProbeStatus::Active ? "true" : "false")});
        }
        table.metadata.emplace_back("rejected_" + model.tag, std::to_string(rejected));
        table.metadata.emplace_back("node_contact_" + model.tag, std::to_string(nodes));
    }
    return table;
}

Table fig6(const ExperimentConfig& config, const ProgressFn& progress) {
    const Model model = coupled_model(config);
    const int periods = config.run.n_periods;
    const PeriodSchedule schedule(model.params, initial_field(config), 1, periods);
    ProbeSet probes = seed_probes(ProbeLayout::parse(config.run.probe_layout), schedule.post_kick(1), config.run.seed);
    Table table{"positions.csv", {"model_tag", "probe_id", "t", "q1", "q2", "q1_unwrapped", "q2_unwrapped", "status"},
                {}, {}};
    auto record = [&] {
        for (const Probe& p : probes.probes) {
            table.rows.push_back({model.tag, static_cast<long long>(p.id), probes.time, wrap(p.q1), wrap(p.q2), p.q1,
                                  p.q2, status_name(p.status)});
        }
    };
    record();
    const double period = model.params.period;
    for (int n = 1; n <= periods; ++n) {
        report(progress, "fig6: period " + std::to_string(n) + "/" + std::to_string(periods));
        probes = advance_probes(std::move(probes), schedule.post_kick(n), model.params, n * period, (n + 1) * period,
                                config.run.traj_dt);
        record();
    }
    return table;
}

Table classical(const ExperimentConfig& config, const ProgressFn& progress) {
    const GridSpec grid = config.grid_spec();
    const InitialStateSpec init = config.initial_state();
    const WaveField field = initial_field(config);
    const ProbeSet seeded = seed_probes(ProbeLayout::parse(config.run.probe_layout), field, config.run.seed);
    Table table{"classical.csv", {"n", "model_tag", "mean_p1", "var_p1"}, {}, {}};
    for (const Model& model : {single_model(config), coupled_model(config)}) {
        report(progress, "classical: " + model.tag);
        ClassicalEnsemble ensemble;
        for (const Probe& p : seeded.probes) {
            ensemble.states.push_back({p.q1, grid.momentum(init.m1), p.q2, grid.momentum(init.m2)});
        }
        for (int n = 0; n <= config.run.n_periods; ++n) {
            if (n > 0) {
                evolve(ensemble, model.params, 1);
            }
            const EnsembleMoments m = ensemble_moments(ensemble);
            table.rows.push_back({static_cast<long long>(n), model.tag, m.mean_p1, m.var_p1});
        }
    }
    return table;
}

} // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, settings] : preset_defaults()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

ExperimentConfig preset_config(std::string_view preset, const Settings& overrides) {
    const auto it = preset_defaults().find(preset);
    if (it == preset_defaults().end()) {
        throw ConfigError("unknown preset '" + std::string(preset) + "'");
    }
    Settings merged;
    for (const auto& [key, value] : overrides) {
        if (key == "profile") {
            merged.emplace_back(key, value);
        }
    }
    merged.insert(merged.end(), it->second.begin(), it->second.end());
    for (const auto& [key, value] : overrides) {
        if (key != "profile") {
            merged.emplace_back(key, value);
        }
    }
    ExperimentConfig config;
    apply_settings(config, merged);
    config.output.preset = std::string(preset);
    config.validate();
    return config;
}

std::vector<Table> run_preset(const ExperimentConfig& config, const ProgressFn& progress) {
    config.validate();
    const std::string& preset = config.output.preset;
    if (preset == "fig1") {
        return {fig1(config, progress)};
    }
    if (preset == "fig2") {
        return {fig2(config, progress)};
    }
    if (preset == "fig7") {
        return {fig7(config, progress)};
    }
    if (preset == "fig3a") {
        return {trajectories(config, single_model(config), progress)};
    }
    if (preset == "fig3bc" || preset == "fig4") {
        return {trajectories(config, coupled_model(config), progress)};
    }
    if (preset == "fig5") {
        return {fig5(config, progress)};
    }
    if (preset == "fig6") {
        return {fig6(config, progress)};
    }
    if (preset == "classical") {
        return {classical(config, progress)};
    }
    throw ConfigError("unknown preset '" + preset + "'");
}

} // namespace bohmrotor::experiment
