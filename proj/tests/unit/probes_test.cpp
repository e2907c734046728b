#include "bohmrotor/probes.hpp"

#include <cmath>
#include <limits>

#include "gtest/gtest.h"

#include "bohmrotor/errors.hpp"
#include "bohmrotor/flow.hpp"
#include "bohmrotor/observables.hpp"
#include "oracles.hpp"

using namespace bohmrotor;
using bohmrotor::testing::cyclic_order_preserved;
using bohmrotor::testing::sample_field;
using bohmrotor::testing::SmoothField;

namespace {

const double kDeskHbar = kTwoPi * 11.0 / 1024.0;

ProbeSet line_of_probes(int count, double q2, double time) {
    ProbeSet set;
    set.time = time;
    for (int j = 0; j < count; ++j) {
        set.probes.push_back({kTwoPi * j / count, q2, ProbeStatus::Active, j});
    }
    return set;
}

} // namespace

TEST(advance_probes, plane_wave_constant_velocity) {
    const GridSpec grid = make_grid(4096, 512, kTwoPi * 43.0 / 4096.0);
    const ModelParams params{2.0, 0.9, 1.0, 0.2};
    const WaveField field = init_momentum_eigenstate(grid, {24, 24});
    ProbeSet set;
    set.probes.push_back({1.0, 2.0, ProbeStatus::Active, 0});
    // A coarse step is enough: the velocity field is exactly constant.
    const ProbeSet out = advance_probes(set, field, params, 0.0, 1.0, 0.1);
    const double p = grid.momentum(24);
    EXPECT_NEAR(out.probes[0].q1, 1.0 + p * 1.2, 1e-8);
    EXPECT_NEAR(out.probes[0].q2, 2.0 + p * 1.2, 1e-8);
    EXPECT_DOUBLE_EQ(out.time, 1.0);
}

TEST(advance_probes, forward_then_backward_returns) {
    const GridSpec grid = make_grid(64, 32, 0.4);
    const ModelParams params{1.0, 0.5, 1.0, 0.2};
    const WaveField field = sample_field(grid, SmoothField::random(31, 2, 0.6));
    ProbeSet set = line_of_probes(12, 1.0, 0.0);
    const ProbeSet there = advance_probes(set, field, params, 0.0, 1.0, 1e-3);
    const ProbeSet back = advance_probes(there, field, params, 1.0, 0.0, -1e-3);
    for (std::size_t i = 0; i < set.probes.size(); ++i) {
        ASSERT_EQ(back.probes[i].status, ProbeStatus::Active);
        EXPECT_NEAR(back.probes[i].q1, set.probes[i].q1, 1e-6);
        EXPECT_NEAR(back.probes[i].q2, set.probes[i].q2, 1e-6);
    }
}

TEST(advance_probes, single_rotor_trajectories_never_cross) {
    const GridSpec grid = make_grid(256, 8, 0.2);
    const ModelParams params{2.0, 0.0, 1.0, 0.0};
    const WaveField post_kick = apply_kick(init_momentum_eigenstate(grid, {3, 0}), params).with_time(1.0);
    ProbeSet set = line_of_probes(20, 0.0, 1.0);
    for (int k = 1; k <= 10; ++k) {
        set = advance_probes(set, post_kick, params, 1.0 + 0.1 * (k - 1), 1.0 + 0.1 * k, 1e-3);
        std::vector<double> q;
        for (const auto& p : set.probes) {
            ASSERT_EQ(p.status, ProbeStatus::Active);
            q.push_back(p.q1);
        }
        ASSERT_TRUE(cyclic_order_preserved(q)) << "t=" << set.time;
    }
}

TEST(advance_probes, rejects_intervals_across_a_kick) {
    const GridSpec grid = make_grid(16, 16, 0.5);
    const ModelParams params{1.0, 1.0, 1.0, 0.0};
    const WaveField field = init_momentum_eigenstate(grid, {1, 1}).with_time(2.0);
    ProbeSet set = line_of_probes(3, 0.0, 2.5);
    EXPECT_THROW(advance_probes(set, field, params, 2.5, 3.5, 0.01), SchedulingError);
    EXPECT_THROW(advance_probes(set, field, params, 1.5, 2.5, 0.01), SchedulingError);
    // Probe time must match the interval start.
    EXPECT_THROW(advance_probes(set, field, params, 2.2, 2.8, 0.01), SchedulingError);
    // Step sign must follow the interval direction.
    EXPECT_THROW(advance_probes(set, field, params, 2.5, 2.8, -0.01), SchedulingError);
    EXPECT_NO_THROW(advance_probes(set, field, params, 2.5, 3.0, 0.01));
}

TEST(advance_probes, history_stays_time_ordered) {
    const GridSpec grid = make_grid(32, 16, 0.5);
    const ModelParams params{1.0, 1.0, 1.0, 0.0};
    const WaveField field = init_momentum_eigenstate(grid, {1, 2});
    ProbeSet set = line_of_probes(4, 0.0, 0.5);
    set.enable_history();
    ProbeSet ahead = advance_probes(set, field, params, 0.5, 1.0, 0.05);
    ASSERT_EQ(ahead.history->size(), 2u);
    // Returning to an already recorded time is refused.
    EXPECT_THROW(advance_probes(ahead, field, params, 1.0, 0.5, -0.05), SchedulingError);
    ProbeSet behind = advance_probes(set, field, params, 0.5, 0.2, -0.05);
    ASSERT_EQ(behind.history->size(), 2u);
    EXPECT_DOUBLE_EQ(behind.history->front().time, 0.2);
    EXPECT_DOUBLE_EQ(behind.history->back().time, 0.5);
}

TEST(advance_probes, node_contact_freezes_probe) {
    const GridSpec grid = make_grid(64, 16, 0.3);
    const ModelParams params{0.0, 0.0, 1.0, 0.0};
    // Static standing wave: nodes of cos(8 q1) at grid index 2 + 4k never move.
    const WaveField field = sample_field(grid, [](double q1, double) { return Complex(std::cos(8.0 * q1), 0.0); });
    ProbeSet set;
    set.probes.push_back({grid.position(Axis::Q1, 2) + 1e-3, 0.5, ProbeStatus::Active, 0});
    set.probes.push_back({grid.position(Axis::Q1, 4) + 1e-3, 0.5, ProbeStatus::Active, 1});
    const ProbeSet out = advance_probes(set, field, params, 0.0, 0.1, 0.01);
    EXPECT_EQ(out.probes[0].status, ProbeStatus::NodeContact);
    EXPECT_EQ(out.probes[0].q1, set.probes[0].q1);
    EXPECT_EQ(out.probes[1].status, ProbeStatus::Active);
}

TEST(run_with_convergence, plane_wave_has_no_rejections) {
    const GridSpec grid = make_grid(64, 32, 0.3);
    const ModelParams params{0.0, 0.0, 1.0, 0.2};
    const PeriodSchedule schedule(params, init_momentum_eigenstate(grid, {5, -2}), 0, 3);
    for (double dt : {0.05, 0.01}) {
        ProbeSet set = line_of_probes(50, 2.0, 2.0);
        const ConvergenceResult result = run_with_convergence(set, schedule, {1, 1}, dt, 0.1);
        EXPECT_EQ(result.probes.active_count(), 50u);
        for (double d : result.deviation) {
            EXPECT_LT(d, 1e-10);
        }
        const auto records = trajectory_records(result.probes, 1.0);
        ASSERT_EQ(records[7].samples.size(), 3u);
        EXPECT_EQ(records[7].samples.front().n, 1);
        const double v = 0.3 * (5 - 0.2 * 2);
        EXPECT_NEAR(averaged_velocity(records[7], Axis::Q1, 1), v, 1e-10);
        EXPECT_NEAR(averaged_velocity(records[7], Axis::Q1, 2), v, 1e-10);
        EXPECT_NEAR(effective_kick(records[7], Axis::Q1, 2), 0.0, 1e-10);
    }
}

TEST(run_with_convergence, infinite_threshold_equals_half_step_run) {
    const GridSpec grid = make_grid(64, 32, 0.3);
    const ModelParams params{1.0, 0.6, 1.0, 0.2};
    const PeriodSchedule schedule(params, sample_field(grid, SmoothField::random(41, 2, 0.6)), 0, 2);
    ProbeSet set = line_of_probes(16, 1.0, 1.0);
    const ConvergenceResult result =
        run_with_convergence(set, schedule, {0, 1}, 0.02, std::numeric_limits<double>::infinity());
    const ProbeSet plain = advance_probes(set, schedule.post_kick(1), params, 1.0, 2.0, 0.01);
    EXPECT_EQ(result.probes.active_count(), 16u);
    for (std::size_t i = 0; i < set.probes.size(); ++i) {
        EXPECT_EQ(result.probes.probes[i].q1, plain.probes[i].q1);
        EXPECT_EQ(result.probes.probes[i].q2, plain.probes[i].q2);
    }
}

TEST(run_with_convergence, coarse_steps_get_rejected) {
    const GridSpec grid = make_grid(128, 32, 0.2);
    const ModelParams params{2.0, 0.9, 1.0, 0.2};
    const PeriodSchedule schedule(params, init_momentum_eigenstate(grid, {8, 8}), 0, 3);
    ProbeSet set = line_of_probes(64, 1.0, 2.0);
    // Steps of T/4 cannot resolve the post-kick flow.
    const ConvergenceResult result = run_with_convergence(set, schedule, {1, 1}, 0.25, 0.1);
    EXPECT_LT(result.probes.active_count(), 64u);
    for (std::size_t i = 0; i < set.probes.size(); ++i) {
        if (result.probes.probes[i].status == ProbeStatus::Rejected) {
            EXPECT_GT(result.deviation[i], 0.1);
        }
    }
}

TEST(run_with_convergence, requires_kick_aligned_seed) {
    const GridSpec grid = make_grid(16, 16, 0.3);
    const ModelParams params{1.0, 0.6, 1.0, 0.2};
    const PeriodSchedule schedule(params, init_momentum_eigenstate(grid, {1, 1}), 0, 2);
    EXPECT_THROW(run_with_convergence(line_of_probes(2, 0.0, 1.5), schedule, {0, 1}, 0.1, 0.1), SchedulingError);
    EXPECT_THROW(run_with_convergence(line_of_probes(2, 0.0, 1.0), schedule, {0, 0}, 0.1, 0.1), ConfigError);
    EXPECT_THROW(run_with_convergence(line_of_probes(2, 0.0, 1.0), schedule, {0, 1}, 0.1, 0.0), ConfigError);
}

namespace {

// Right side of the first-order acceleration formula for R = R1(q1) R2(q2):
// (hbar^2/2) d/dq2 [(R11 + R22 + 2c R12)/R] + (hbar^2 c/2) d/dq1 [(R11 + R22)/R].
struct ProductAmplitude {
    double a;
    double b;
    double r1(double q) const { return 1.0 + a * std::cos(q); }
    double r1p(double q) const { return -a * std::sin(q); }
    double r1pp(double q) const { return -a * std::cos(q); }
    double r2(double q) const { return 1.0 + b * std::cos(q); }
    double r2p(double q) const { return -b * std::sin(q); }
    double r2pp(double q) const { return -b * std::cos(q); }

    double first_order_acceleration(double q1, double q2, double hbar, double c) const {
        auto full = [&](double x, double y) { return r1pp(x) / r1(x) + r2pp(y) / r2(y) + 2.0 * c * r1p(x) * r2p(y) / (r1(x) * r2(y)); };
        auto diag = [&](double x, double y) { return r1pp(x) / r1(x) + r2pp(y) / r2(y); };
        using bohmrotor::testing::fd_partial;
        return 0.5 * hbar * hbar * fd_partial(full, q1, q2, 1) + 0.5 * hbar * hbar * c * fd_partial(diag, q1, q2, 0);
    }
};

double measured_acceleration(const GridSpec& grid, const ProductAmplitude& amp, double c, int i1, int i2) {
    const ModelParams params{0.0, 0.0, 1.0, c};
    const double tau = 0.5;
    const double h = 0.02;
    const WaveField target = sample_field(grid, [&](double q1, double q2) {
        return Complex(amp.r1(q1) * amp.r2(q2), 0.0);
    });
    // Back-propagate so the target state sits at mid-period.
    const WaveField post_kick = apply_free(target, params, -tau).with_time(0.0);
    ProbeSet set;
    set.time = tau;
    set.probes.push_back({grid.position(Axis::Q1, i1), grid.position(Axis::Q2, i2), ProbeStatus::Active, 0});
    const ProbeSet ahead = advance_probes(set, post_kick, params, tau, tau + h, 1e-3);
    const ProbeSet behind = advance_probes(set, post_kick, params, tau, tau - h, -1e-3);
    return (ahead.probes[0].q2 - 2.0 * set.probes[0].q2 + behind.probes[0].q2) / (h * h);
}

} // namespace

TEST(bohm_dynamics, coupling_accelerates_along_second_axis) {
    const GridSpec grid = make_grid(256, 256, 0.5);
    const ProductAmplitude amp{0.3, 0.25};
    const int i1 = 32;
    const int i2 = 32;
    const double q1 = grid.position(Axis::Q1, i1);
    const double q2 = grid.position(Axis::Q2, i2);
    for (double c : {0.0, 0.02, 0.05}) {
        const double measured = measured_acceleration(grid, amp, c, i1, i2);
        const double predicted = amp.first_order_acceleration(q1, q2, grid.hbar(), c);
        const double tolerance = c == 0.0 ? 1e-3 : std::max(0.1, 5.0 * c);
        EXPECT_LT(std::abs(measured - predicted) / std::abs(predicted), tolerance) << "c=" << c;
    }
}
