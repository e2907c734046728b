#include "bohmrotor/classical.hpp"

#include <cmath>

#include "bohmrotor/errors.hpp"

namespace bohmrotor {

namespace {

// sin of an unwrapped angle, evaluated on its representative in [0, 2pi).
double wrapped_sin(double q) { return std::sin(q - kTwoPi * std::floor(q / kTwoPi)); }

} // namespace

RotorState std_map_step(RotorState state, double k, double period) {
    state.q += period * state.p;
    state.p += k * wrapped_sin(state.q);
    return state;
}

ClassicalState coupled_map_step(const ClassicalState& state, const ModelParams& params) {
    ClassicalState next;
    next.q1 = state.q1 + params.period * (state.p1 + params.c_pp * state.p2);
    next.q2 = state.q2 + params.period * (state.p2 + params.c_pp * state.p1);
    next.p1 = state.p1 + params.k1 * wrapped_sin(next.q1);
    next.p2 = state.p2 + params.k2 * wrapped_sin(next.q2);
    return next;
}

ClassicalState coupled_map_inverse(const ClassicalState& state, const ModelParams& params) {
    ClassicalState prev;
    prev.p1 = state.p1 - params.k1 * wrapped_sin(state.q1);
    prev.p2 = state.p2 - params.k2 * wrapped_sin(state.q2);
    prev.q1 = state.q1 - params.period * (prev.p1 + params.c_pp * prev.p2);
    prev.q2 = state.q2 - params.period * (prev.p2 + params.c_pp * prev.p1);
    return prev;
}

void evolve(ClassicalEnsemble& ensemble, const ModelParams& params, int steps) {
    for (auto& state : ensemble.states) {
        for (int s = 0; s < steps; ++s) {
            state = coupled_map_step(state, params);
        }
    }
    ensemble.step += steps;
}

EnsembleMoments ensemble_moments(const ClassicalEnsemble& ensemble) {
    if (ensemble.states.empty()) {
        throw ObservableError("moments of an empty ensemble");
    }
    const double count = static_cast<double>(ensemble.states.size());
    double mean = 0.0;
    for (const auto& state : ensemble.states) {
        mean += state.p1;
    }
    mean /= count;
    double var = 0.0;
    for (const auto& state : ensemble.states) {
        const double d = state.p1 - mean;
        var += d * d;
    }
    return {mean, var / count};
}

TrajectoryRecord classical_trajectory(const ClassicalState& start, const ModelParams& params, int steps, int id) {
    TrajectoryRecord record;
    record.probe_id = id;
    record.period = params.period;
    record.samples.reserve(static_cast<std::size_t>(steps) + 1);
    ClassicalState state = start;
    record.samples.push_back({0, state.q1, state.q2});
    for (int n = 1; n <= steps; ++n) {
        state = coupled_map_step(state, params);
        record.samples.push_back({n, state.q1, state.q2});
    }
    return record;
}

} // namespace bohmrotor
