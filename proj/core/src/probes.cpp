#include "bohmrotor/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <span>
#include <string>

#include "bohmrotor/errors.hpp"
#include "bohmrotor/flow.hpp"
#include "flow_detail.hpp"
#include "parallel.hpp"

namespace bohmrotor {

const char* to_string(ProbeStatus status) {
    switch (status) {
    case ProbeStatus::Active:
        return "active";
    case ProbeStatus::Rejected:
        return "rejected";
    case ProbeStatus::NodeContact:
        return "node_contact";
    }
    return "unknown";
}

void ProbeSet::enable_history() {
    history.emplace();
    record_snapshot();
}

void ProbeSet::record_snapshot() {
    if (!history) {
        return;
    }
    ProbeSnapshot snapshot;
    snapshot.time = time;
    snapshot.positions.reserve(probes.size());
    for (const auto& probe : probes) {
        snapshot.positions.push_back({probe.q1, probe.q2});
    }
    auto& snapshots = *history;
    if (snapshots.empty() || time > snapshots.back().time) {
        snapshots.push_back(std::move(snapshot));
    } else if (time < snapshots.front().time) {
        snapshots.insert(snapshots.begin(), std::move(snapshot));
    } else {
        throw SchedulingError("snapshot time " + std::to_string(time) + " falls inside the recorded history");
    }
}

std::size_t ProbeSet::active_count() const {
    return static_cast<std::size_t>(std::count_if(probes.begin(), probes.end(),
                                                  [](const Probe& p) { return p.status == ProbeStatus::Active; }));
}

namespace {

constexpr double kTimeSlack = 1e-9;

int step_count(double span, double dt) {
    const double ratio = std::abs(span) / std::abs(dt);
    return std::max(1, static_cast<int>(std::ceil(ratio - 1e-9)));
}

struct Track {
    ProbeSet* set;
    int refine;
};

// Velocity grids at the RK stage times of one interval, indexed by stage number.
class StageCache {
  public:
    StageCache(const WaveField& post_kick, const ModelParams& params, double t0, double t1, int stages)
        : post_kick_(post_kick), params_(params), t0_(t0), t1_(t1), stages_(stages) {}

    const VectorGrid& at(int stage) {
        if (auto it = grids_.find(stage); it != grids_.end()) {
            return it->second;
        }
        const double t = stage == stages_ ? t1_ : t0_ + (t1_ - t0_) * stage / stages_;
        const double tau = std::clamp(t - post_kick_.time(), 0.0, params_.period);
        const WaveField field = field_at(post_kick_, params_, tau);
        return grids_.emplace(stage, detail::velocity_from_momentum(field.grid(), field.amplitudes(), params_,
                                                                     kNodeThreshold))
            .first->second;
    }

    void drop_before(int stage) { grids_.erase(grids_.begin(), grids_.lower_bound(stage)); }

  private:
    const WaveField& post_kick_;
    const ModelParams& params_;
    double t0_;
    double t1_;
    int stages_;
    std::map<int, VectorGrid> grids_;
};

void rk4_step(std::vector<Probe>& probes, const VectorGrid& start, const VectorGrid& mid, const VectorGrid& end,
              double h) {
    detail::parallel_for(probes.size(), [&](std::size_t i) {
        Probe& probe = probes[i];
        if (probe.status != ProbeStatus::Active) {
            return;
        }
        const VelocitySample a = interpolate(start, probe.q1, probe.q2);
        if (!a.valid) {
            probe.status = ProbeStatus::NodeContact;
            return;
        }
        const VelocitySample b = interpolate(mid, probe.q1 + 0.5 * h * a.v1, probe.q2 + 0.5 * h * a.v2);
        if (!b.valid) {
            probe.status = ProbeStatus::NodeContact;
            return;
        }
        const VelocitySample c = interpolate(mid, probe.q1 + 0.5 * h * b.v1, probe.q2 + 0.5 * h * b.v2);
        if (!c.valid) {
            probe.status = ProbeStatus::NodeContact;
            return;
        }
        const VelocitySample d = interpolate(end, probe.q1 + h * c.v1, probe.q2 + h * c.v2);
        if (!d.valid) {
            probe.status = ProbeStatus::NodeContact;
            return;
        }
        probe.q1 += h / 6.0 * (a.v1 + 2.0 * b.v1 + 2.0 * c.v1 + d.v1);
        probe.q2 += h / 6.0 * (a.v2 + 2.0 * b.v2 + 2.0 * c.v2 + d.v2);
    });
}

// Integrates every track over [t0, t1]. Track i takes base_steps * refine
// equal steps; all tracks draw on one stage cache, so stage times common to
// several tracks are evaluated once.
void integrate_interval(std::span<Track> tracks, const WaveField& post_kick, const ModelParams& params, double t0,
                        double t1, int base_steps) {
    int finest = 1;
    for (const auto& track : tracks) {
        finest = std::max(finest, track.refine);
    }
    const int per_base = 2 * finest;
    StageCache cache(post_kick, params, t0, t1, per_base * base_steps);

    for (int s = 0; s < base_steps; ++s) {
        const int origin = per_base * s;
        cache.drop_before(origin);
        for (const auto& track : tracks) {
            const int stride = per_base / track.refine;
            const double h = (t1 - t0) / (static_cast<double>(base_steps) * track.refine);
            for (int j = 0; j < track.refine; ++j) {
                const int first = origin + j * stride;
                const VectorGrid& start = cache.at(first);
                const VectorGrid& mid = cache.at(first + stride / 2);
                const VectorGrid& end = cache.at(first + stride);
                rk4_step(track.set->probes, start, mid, end, h);
            }
        }
    }
    for (auto& track : tracks) {
        track.set->time = t1;
        track.set->record_snapshot();
    }
}

void check_interval(const ProbeSet& probes, const WaveField& post_kick, const ModelParams& params, double t0,
                    double t1) {
    const double slack = kTimeSlack * params.period;
    const double start = post_kick.time();
    const double stop = start + params.period;
    auto inside = [&](double t) { return t >= start - slack && t <= stop + slack; };
    if (!inside(t0) || !inside(t1)) {
        throw SchedulingError("interval [" + std::to_string(t0) + ", " + std::to_string(t1) +
                              "] straddles a kick; split it at multiples of T");
    }
    if (std::abs(probes.time - t0) > slack) {
        throw SchedulingError("probe set time does not match interval start");
    }
}

} // namespace

ProbeSet advance_probes(ProbeSet probes, const WaveField& post_kick, const ModelParams& params, double t0,
                        double t1, double dt) {
    check_interval(probes, post_kick, params, t0, t1);
    if (t1 == t0) {
        return probes;
    }
    if (dt == 0.0 || !std::isfinite(dt) || (dt > 0.0) != (t1 > t0)) {
        throw SchedulingError("step dt must be nonzero and share the sign of t1 - t0");
    }
    Track track{&probes, 1};
    integrate_interval(std::span(&track, 1), post_kick, params, t0, t1, step_count(t1 - t0, dt));
    return probes;
}

ConvergenceResult run_with_convergence(ProbeSet probes, const PeriodSchedule& schedule, const Itinerary& itinerary,
                                       double dt, double threshold) {
    const ModelParams& params = schedule.params();
    const double period = params.period;
    if (!(threshold > 0.0)) {
        throw ConfigError("rejection threshold must be positive");
    }
    if (itinerary.periods_back < 0 || itinerary.periods_forward < 0 ||
        itinerary.periods_back + itinerary.periods_forward == 0) {
        throw ConfigError("itinerary must cover at least one period");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("step dt must be positive");
    }
    const double seed_time = probes.time;
    const int seed_period = static_cast<int>(std::lround(seed_time / period));
    if (std::abs(seed_time - seed_period * period) > kTimeSlack * period) {
        throw SchedulingError("probes must be seeded at a kick time");
    }
    const int steps = step_count(period, dt);

    probes.history.reset();
    ProbeSet back_coarse = probes;
    ProbeSet back_fine = probes;
    ProbeSet fwd_coarse = probes;
    ProbeSet fwd_fine = probes;
    for (ProbeSet* set : {&back_coarse, &back_fine, &fwd_coarse, &fwd_fine}) {
        set->enable_history();
    }

    for (int b = 1; b <= itinerary.periods_back; ++b) {
        const double t0 = seed_time - (b - 1) * period;
        const double t1 = seed_time - b * period;
        std::array<Track, 2> tracks{Track{&back_coarse, 1}, Track{&back_fine, 2}};
        integrate_interval(tracks, schedule.post_kick(seed_period - b), params, t0, t1, steps);
    }
    for (int f = 1; f <= itinerary.periods_forward; ++f) {
        const double t0 = seed_time + (f - 1) * period;
        const double t1 = seed_time + f * period;
        std::array<Track, 2> tracks{Track{&fwd_coarse, 1}, Track{&fwd_fine, 2}};
        integrate_interval(tracks, schedule.post_kick(seed_period + f - 1), params, t0, t1, steps);
    }

    // Merge the two legs into one ascending history (the seed snapshot is shared).
    auto merge = [](const ProbeSet& back, const ProbeSet& fwd) {
        std::vector<ProbeSnapshot> merged = *back.history;
        merged.insert(merged.end(), fwd.history->begin() + 1, fwd.history->end());
        return merged;
    };
    std::vector<ProbeSnapshot> coarse_history = merge(back_coarse, fwd_coarse);
    std::vector<ProbeSnapshot> fine_history = merge(back_fine, fwd_fine);

    const ProbeSet& fine_end = itinerary.periods_forward > 0 ? fwd_fine : back_fine;
    ConvergenceResult result;
    result.probes.probes = fine_end.probes;
    result.probes.time = fine_end.time;
    result.deviation.assign(probes.probes.size(), 0.0);

    for (std::size_t i = 0; i < probes.probes.size(); ++i) {
        const bool touched = back_coarse.probes[i].status == ProbeStatus::NodeContact ||
                             back_fine.probes[i].status == ProbeStatus::NodeContact ||
                             fwd_coarse.probes[i].status == ProbeStatus::NodeContact ||
                             fwd_fine.probes[i].status == ProbeStatus::NodeContact;
        Probe& out = result.probes.probes[i];
        if (touched) {
            out.status = ProbeStatus::NodeContact;
            result.deviation[i] = std::numeric_limits<double>::infinity();
            continue;
        }
        double worst = 0.0;
        for (std::size_t k = 0; k + 1 < fine_history.size(); ++k) {
            for (int axis = 0; axis < 2; ++axis) {
                const double coarse_v =
                    (coarse_history[k + 1].positions[i][axis] - coarse_history[k].positions[i][axis]) / period;
                const double fine_v =
                    (fine_history[k + 1].positions[i][axis] - fine_history[k].positions[i][axis]) / period;
                worst = std::max(worst, std::abs(coarse_v - fine_v));
            }
        }
        result.deviation[i] = worst;
        if (out.status == ProbeStatus::Active && worst > threshold) {
            out.status = ProbeStatus::Rejected;
        }
    }
    result.probes.history = std::move(fine_history);
    return result;
}

std::vector<TrajectoryRecord> trajectory_records(const ProbeSet& probes, double period) {
    if (!probes.history) {
        throw ObservableError("probe set carries no history");
    }
    std::vector<TrajectoryRecord> records(probes.probes.size());
    for (std::size_t i = 0; i < probes.probes.size(); ++i) {
        records[i].probe_id = probes.probes[i].id;
        records[i].period = period;
        records[i].status = probes.probes[i].status;
    }
    for (const auto& snapshot : *probes.history) {
        const double ratio = snapshot.time / period;
        const long n = std::lround(ratio);
        if (std::abs(ratio - static_cast<double>(n)) > kTimeSlack) {
            continue;
        }
        for (std::size_t i = 0; i < records.size(); ++i) {
            records[i].samples.push_back(
                {static_cast<int>(n), snapshot.positions[i][0], snapshot.positions[i][1]});
        }
    }
    return records;
}

} // namespace bohmrotor
