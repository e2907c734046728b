#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bohmrotor/evolve.hpp"
#include "bohmrotor/trajectory.hpp"

namespace bohmrotor {

/// A Bohmian test particle. Coordinates are unwrapped; the field is sampled at q mod 2pi.
struct Probe {
    double q1 = 0.0;
    double q2 = 0.0;
    ProbeStatus status = ProbeStatus::Active;
    int id = 0;
};

struct ProbeSnapshot {
    double time = 0.0;
    std::vector<std::array<double, 2>> positions;
};

/// Probes sharing one timestamp, with an optional time-ordered position history.
struct ProbeSet {
    std::vector<Probe> probes;
    double time = 0.0;
    std::optional<std::vector<ProbeSnapshot>> history;

    /// Starts a history whose first snapshot is the current state.
    void enable_history();
    /// Adds the current state to the history, keeping snapshot times strictly
    /// increasing. Throws SchedulingError if the current time falls inside the
    /// recorded span.
    void record_snapshot();
    std::size_t active_count() const;
};

/// RK4 integration of every Active probe from t0 to t1 with fixed step close to |dt|.
///
/// [t0, t1] must lie inside the inter-kick interval that starts at
/// post_kick.time(); the interval may run backwards. Velocities come from
/// field_at(post_kick, tau); each distinct stage time is evaluated once and
/// shared by all probes. A probe that samples a node-flagged stencil freezes
/// with NodeContact status.
ProbeSet advance_probes(ProbeSet probes, const WaveField& post_kick, const ModelParams& params, double t0,
                        double t1, double dt);

/// Whole kick periods to integrate from the seeding time.
struct Itinerary {
    int periods_back = 0;
    int periods_forward = 1;
};

struct ConvergenceResult {
    /// Fine-step (dt/2) positions with snapshots at every kick time visited.
    ProbeSet probes;
    /// Largest |V_i(n)| difference between the dt and dt/2 runs, per probe.
    std::vector<double> deviation;
};

/// Runs the itinerary twice, with steps dt and dt/2, and marks probes whose
/// per-period averaged velocities differ by more than `threshold` as Rejected.
/// The seeding time probes.time must be a multiple of the period.
ConvergenceResult run_with_convergence(ProbeSet probes, const PeriodSchedule& schedule, const Itinerary& itinerary,
                                       double dt, double threshold);

/// One record per probe from the history snapshots taken at kick times.
std::vector<TrajectoryRecord> trajectory_records(const ProbeSet& probes, double period);

} // namespace bohmrotor
