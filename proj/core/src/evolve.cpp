#include "bohmrotor/evolve.hpp"

#include <cmath>
#include <string>

#include "bohmrotor/errors.hpp"

namespace bohmrotor {

namespace {

Complex unit_phase(double angle) {
    const double reduced = std::remainder(angle, kTwoPi);
    return {std::cos(reduced), std::sin(reduced)};
}

// Relative slack when comparing times against kick boundaries.
constexpr double kTimeSlack = 1e-12;

} // namespace

WaveField apply_kick(const WaveField& field, const ModelParams& params) {
    const GridSpec& grid = field.grid();
    std::vector<Complex> data = transform(field, Representation::Position).release();
    std::vector<Complex> kick1(grid.n1());
    std::vector<Complex> kick2(grid.n2());
    for (int i = 0; i < grid.n1(); ++i) {
        kick1[i] = unit_phase(-params.k1 * std::cos(grid.position(Axis::Q1, i)) / grid.hbar());
    }
    for (int i = 0; i < grid.n2(); ++i) {
        kick2[i] = unit_phase(-params.k2 * std::cos(grid.position(Axis::Q2, i)) / grid.hbar());
    }
    for (int i1 = 0; i1 < grid.n1(); ++i1) {
        for (int i2 = 0; i2 < grid.n2(); ++i2) {
            data[grid.index(i1, i2)] *= kick1[i1] * kick2[i2];
        }
    }
    return WaveField(grid, std::move(data), Representation::Position, field.time());
}

WaveField apply_free(const WaveField& field, const ModelParams& params, double dt) {
    const GridSpec& grid = field.grid();
    std::vector<Complex> data = transform(field, Representation::Momentum).release();
    if (dt != 0.0) {
        const double scale = -0.5 * grid.hbar() * dt;
        const int n1 = grid.n1();
        const int n2 = grid.n2();
        std::vector<Complex> diag2(n2);
        for (int k2 = 0; k2 < n2; ++k2) {
            const double m2 = grid.mode_of_slot(Axis::Q2, k2);
            diag2[k2] = unit_phase(scale * m2 * m2);
        }
        // cross phase e^{i a m2} = e^{i a (lo - n2/2)} e^{i a B hi}, m2 + n2/2 = B hi + lo
        constexpr int kBlock = 16;
        const int blocks = (n2 + kBlock - 1) / kBlock;
        std::vector<Complex> low(kBlock);
        std::vector<Complex> high(blocks);
        std::vector<Complex> row(n2);
        for (int k1 = 0; k1 < n1; ++k1) {
            const double m1 = grid.mode_of_slot(Axis::Q1, k1);
            const Complex diag1 = unit_phase(scale * m1 * m1);
            Complex* out = data.data() + grid.index(k1, 0);
            if (params.c_pp == 0.0) {
                for (int k2 = 0; k2 < n2; ++k2) {
                    out[k2] *= diag1 * diag2[k2];
                }
                continue;
            }
            const double a = 2.0 * params.c_pp * scale * m1;
            for (int lo = 0; lo < kBlock; ++lo) {
                low[lo] = unit_phase(a * (lo - n2 / 2));
            }
            for (int hi = 0; hi < blocks; ++hi) {
                high[hi] = unit_phase(a * (kBlock * hi));
            }
            for (int k2 = 0; k2 < n2; ++k2) {
                const int j = grid.mode_of_slot(Axis::Q2, k2) + n2 / 2;
                row[k2] = high[j / kBlock] * low[j % kBlock];
            }
            for (int k2 = 0; k2 < n2; ++k2) {
                out[k2] *= diag1 * diag2[k2] * row[k2];
            }
        }
    }
    return WaveField(grid, std::move(data), Representation::Momentum, field.time() + dt);
}

WaveField step_period(const WaveField& field, const ModelParams& params) {
    return apply_kick(apply_free(field, params, params.period), params);
}

WaveField field_at(const WaveField& post_kick, const ModelParams& params, double tau) {
    if (!(tau >= 0.0) || tau > params.period * (1.0 + kTimeSlack)) {
        throw RangeError("intra-period offset " + std::to_string(tau) + " outside [0, T]");
    }
    return apply_free(post_kick, params, tau);
}

PeriodSchedule::PeriodSchedule(const ModelParams& params, const WaveField& initial, int first, int last)
    : params_(params), first_(first), last_(last) {
    params_.validate();
    if (first < 0 || last < first) {
        throw ConfigError("schedule window must satisfy 0 <= first <= last");
    }
    post_kick_.reserve(static_cast<std::size_t>(last - first + 1));
    WaveField state = transform(initial, Representation::Position).with_time(0.0);
    for (int n = 0; n <= last; ++n) {
        if (n >= first) {
            post_kick_.push_back(transform(state, Representation::Momentum));
        }
        if (n < last) {
            state = step_period(state, params_);
        }
    }
}

const WaveField& PeriodSchedule::post_kick(int n) const {
    if (n < first_ || n > last_) {
        throw SchedulingError("period " + std::to_string(n) + " is outside the cached schedule window");
    }
    return post_kick_[static_cast<std::size_t>(n - first_)];
}

WaveField PeriodSchedule::state_at(double t) const {
    const double period = params_.period;
    int n = static_cast<int>(std::floor(t / period + kTimeSlack));
    double tau = t - n * period;
    if (tau < 0.0) {
        tau = 0.0;
    }
    // The end of the window is reached as the pre-kick state of the last period.
    if (n == last_ + 1 && tau <= period * kTimeSlack) {
        n = last_;
        tau = period;
    }
    return field_at(post_kick(n), params_, tau);
}

} // namespace bohmrotor
