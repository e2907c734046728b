#pragma once

#include <vector>

#include "bohmrotor/trajectory.hpp"
#include "bohmrotor/wave_field.hpp"

namespace bohmrotor {

/// Single-rotor phase point (q unwrapped).
struct RotorState {
    double q = 0.0;
    double p = 0.0;
};

/// Two-rotor phase point sampled at t = nT+0 (q unwrapped).
struct ClassicalState {
    double q1 = 0.0;
    double p1 = 0.0;
    double q2 = 0.0;
    double p2 = 0.0;
};

struct ClassicalEnsemble {
    std::vector<ClassicalState> states;
    int step = 0;
};

/// Chirikov standard map: q' = q + T p, p' = p + k sin q'.
RotorState std_map_step(RotorState state, double k, double period);

/// Stochasticity parameter K = k T.
inline double stochasticity(double k, double period) { return k * period; }

/// pp-coupled map: q_i' = q_i + T (p_i + c_pp p_j), p_i' = p_i + k_i sin q_i'.
ClassicalState coupled_map_step(const ClassicalState& state, const ModelParams& params);

/// Exact inverse of coupled_map_step.
ClassicalState coupled_map_inverse(const ClassicalState& state, const ModelParams& params);

void evolve(ClassicalEnsemble& ensemble, const ModelParams& params, int steps);

struct EnsembleMoments {
    double mean_p1 = 0.0;
    double var_p1 = 0.0;
};

/// Sample mean and (population) variance of p1. Throws ObservableError when empty.
EnsembleMoments ensemble_moments(const ClassicalEnsemble& ensemble);

/// Map orbit sampled at kick indices 0..steps.
TrajectoryRecord classical_trajectory(const ClassicalState& start, const ModelParams& params, int steps,
                                      int id = 0);

} // namespace bohmrotor
