#pragma once

#include <vector>

#include "bohmrotor/wave_field.hpp"

namespace bohmrotor {

/// Instantaneous kick exp[-(i/hbar)(k1 cos q1 + k2 cos q2)]. Returns a Position field.
WaveField apply_kick(const WaveField& field, const ModelParams& params);

/// Free flight exp[-(i/2hbar)(p1^2 + p2^2 + 2 c_pp p1 p2) dt], diagonal in momentum.
/// dt may be negative. Returns a Momentum field with time advanced by dt.
WaveField apply_free(const WaveField& field, const ModelParams& params, double dt);

/// One period: free flight over T followed by the kick, state(nT+0) -> state((n+1)T+0).
WaveField step_period(const WaveField& field, const ModelParams& params);

/// State at nT + tau from the post-kick state at nT+0, tau in [0, T].
/// tau = T gives the pre-kick state at (n+1)T-0. Returns a Momentum field.
WaveField field_at(const WaveField& post_kick, const ModelParams& params, double tau);

/// Kick schedule with post-kick states cached over a window of periods.
///
/// The first kick acts at t = T. Post-kick states for n in [first, last] are
/// kept in the momentum representation; any time inside
/// [first*T, (last+1)*T] can be reconstructed as U1(t0) applied to the
/// cached post-kick state of the enclosing period.
class PeriodSchedule {
  public:
    /// Evolves `initial` (the state at t = 0) up to period `last`.
    PeriodSchedule(const ModelParams& params, const WaveField& initial, int first, int last);

    const ModelParams& params() const { return params_; }
    int first() const { return first_; }
    int last() const { return last_; }

    /// Post-kick state at nT+0 (Momentum representation).
    const WaveField& post_kick(int n) const;
    /// State at absolute time t, covered by the cached window.
    WaveField state_at(double t) const;

  private:
    ModelParams params_;
    int first_;
    int last_;
    std::vector<WaveField> post_kick_;
};

} // namespace bohmrotor
