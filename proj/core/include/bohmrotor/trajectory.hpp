#pragma once

#include <vector>

namespace bohmrotor {

enum class ProbeStatus { Active, Rejected, NodeContact };

const char* to_string(ProbeStatus status);

struct TrajectorySample {
    int n;      // kick index, sample taken at t = nT+0
    double q1;  // unwrapped
    double q2;  // unwrapped
};

/// Positions of one particle (probe or classical) at consecutive kick times.
struct TrajectoryRecord {
    int probe_id = 0;
    double period = 1.0;
    ProbeStatus status = ProbeStatus::Active;
    std::vector<TrajectorySample> samples;
};

} // namespace bohmrotor
