#include "bohmrotor/evolve.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "bohmrotor/errors.hpp"
#include "bohmrotor/flow.hpp"
#include "bohmrotor/observables.hpp"
#include "oracles.hpp"

using namespace bohmrotor;
using bohmrotor::testing::jacobi_anger_weight;
using bohmrotor::testing::sample_field;
using bohmrotor::testing::SmoothField;

namespace {

double max_distance(const WaveField& a, const WaveField& b) {
    const WaveField bb = transform(b, a.representation());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
        worst = std::max(worst, std::abs(a.amplitudes()[i] - bb.amplitudes()[i]));
    }
    return worst;
}

const ModelParams kPaperCoupled{2.0, 0.9, 1.0, 0.2};

WaveField smooth_state(const GridSpec& grid, unsigned seed) {
    return sample_field(grid, SmoothField::random(seed, 3, 0.8));
}

} // namespace

TEST(apply_kick, zero_kick_is_identity) {
    const GridSpec grid = make_grid(32, 16, 0.4);
    const WaveField field = smooth_state(grid, 1);
    EXPECT_LT(max_distance(field, apply_kick(field, {0.0, 0.0, 1.0, 0.3})), 1e-15);
}

TEST(apply_kick, preserves_modulus_pointwise) {
    const GridSpec grid = make_grid(64, 32, 0.1);
    const WaveField field = smooth_state(grid, 2);
    const WaveField kicked = apply_kick(field, kPaperCoupled);
    for (std::size_t i = 0; i < field.amplitudes().size(); ++i) {
        ASSERT_NEAR(std::abs(kicked.amplitudes()[i]), std::abs(field.amplitudes()[i]), 1e-15);
    }
}

TEST(apply_kick, jacobi_anger_weights) {
    const double hbar = kTwoPi * 11.0 / 1024.0;
    const GridSpec grid = make_grid(1024, 8, hbar);
    const ModelParams params{2.0, 0.0, 1.0, 0.0};
    const WaveField kicked = apply_kick(init_momentum_eigenstate(grid, {0, 0}), params);
    const Histogram1D marginal = momentum_marginal(kicked);
    for (int m = grid.min_mode(Axis::Q1); m <= grid.max_mode(Axis::Q1); ++m) {
        const double mass = marginal.masses[static_cast<std::size_t>(m - grid.min_mode(Axis::Q1))];
        ASSERT_NEAR(mass, jacobi_anger_weight(m, params.k1 / hbar), 1e-8) << "m=" << m;
    }
}

TEST(apply_free, zero_step_is_identity) {
    const GridSpec grid = make_grid(32, 16, 0.4);
    const WaveField field = smooth_state(grid, 3);
    EXPECT_LT(max_distance(field, apply_free(field, kPaperCoupled, 0.0)), 1e-15);
}

TEST(apply_free, eigenstate_acquires_global_phase) {
    const GridSpec grid = make_grid(64, 32, 0.37);
    const int m1 = 9;
    const int m2 = -4;
    const double dt = 0.73;
    const WaveField field = init_momentum_eigenstate(grid, {m1, m2});
    const WaveField evolved = apply_free(field, kPaperCoupled, dt);
    const double p1 = grid.momentum(m1);
    const double p2 = grid.momentum(m2);
    const Complex phase = std::polar(1.0, -(p1 * p1 + p2 * p2 + 2.0 * 0.2 * p1 * p2) * dt / (2.0 * grid.hbar()));
    const WaveField before = transform(field, Representation::Momentum);
    EXPECT_NEAR(std::abs(evolved.mode(m1, m2) - phase * before.mode(m1, m2)), 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(evolved.time(), dt);
}

TEST(apply_free, reversible) {
    const GridSpec grid = make_grid(64, 32, 0.2);
    const WaveField field = smooth_state(grid, 4);
    const WaveField there = apply_free(field, kPaperCoupled, 1.7);
    EXPECT_LT(max_distance(field, apply_free(there, kPaperCoupled, -1.7)), 1e-12);
}

TEST(apply_free, steps_compose) {
    const GridSpec grid = make_grid(64, 32, 0.2);
    const WaveField field = smooth_state(grid, 5);
    const WaveField two_steps = apply_free(apply_free(field, kPaperCoupled, 0.3), kPaperCoupled, 0.45);
    EXPECT_LT(max_distance(two_steps, apply_free(field, kPaperCoupled, 0.75)), 1e-12);
}

TEST(evolve, norm_conserved_per_call) {
    const GridSpec grid = make_grid(128, 32, 0.15);
    WaveField field = smooth_state(grid, 6);
    for (int i = 0; i < 10; ++i) {
        const double before = field.norm_squared();
        const WaveField freed = apply_free(field, kPaperCoupled, 0.61);
        EXPECT_NEAR(freed.norm_squared(), before, 1e-12);
        const WaveField kicked = apply_kick(freed, kPaperCoupled);
        EXPECT_NEAR(kicked.norm_squared(), before, 1e-12);
        field = step_period(field, kPaperCoupled);
        EXPECT_NEAR(field.norm_squared(), before, 1e-12);
    }
}

TEST(step_period, free_rotor_eigenstate_stays_put) {
    const GridSpec grid = make_grid(32, 16, 0.3);
    WaveField field = init_momentum_eigenstate(grid, {5, 2});
    const ModelParams free_rotor{0.0, 0.0, 1.0, 0.0};
    for (int n = 0; n < 5; ++n) {
        field = step_period(field, free_rotor);
    }
    EXPECT_NEAR(momentum_moment(field), 0.0, 1e-20);
    EXPECT_DOUBLE_EQ(field.time(), 5.0);
    EXPECT_NEAR(std::norm(transform(field, Representation::Momentum).mode(5, 2)), 1.0, 1e-12);
}

TEST(step_period, paper_state_unitarity_budget) {
    const double hbar = kTwoPi * 11.0 / 1024.0;
    const GridSpec grid = make_grid(1024, 128, hbar);
    WaveField field = init_momentum_eigenstate(grid, {snap_momentum(grid, kPi / 2), snap_momentum(grid, kPi / 2, Axis::Q2)});
    for (int n = 0; n < 100; ++n) {
        field = step_period(field, kPaperCoupled);
    }
    EXPECT_LT(std::abs(field.norm_squared() - 1.0), 1e-9);
}

TEST(field_at, identity_semigroup_and_range) {
    const GridSpec grid = make_grid(64, 32, 0.2);
    const WaveField field = smooth_state(grid, 7);
    EXPECT_LT(max_distance(field, field_at(field, kPaperCoupled, 0.0)), 1e-15);
    const WaveField composed = apply_free(field_at(field, kPaperCoupled, 0.25), kPaperCoupled, 0.5);
    EXPECT_LT(max_distance(field_at(field, kPaperCoupled, 0.75), composed), 1e-12);
    EXPECT_THROW(field_at(field, kPaperCoupled, -0.1), RangeError);
    EXPECT_THROW(field_at(field, kPaperCoupled, 1.5), RangeError);
}

TEST(field_at, plane_wave_modulus_stays_uniform) {
    const GridSpec grid = make_grid(32, 16, 0.5);
    const WaveField field = init_momentum_eigenstate(grid, {3, -2});
    const double expected = 1.0 / std::sqrt(static_cast<double>(grid.cells()));
    for (double tau : {0.1, 0.5, 0.99}) {
        const WaveField at = transform(field_at(field, kPaperCoupled, tau), Representation::Position);
        for (const auto& v : at.amplitudes()) {
            ASSERT_NEAR(std::abs(v), expected, 1e-13);
        }
    }
}

TEST(evolve, decoupled_limit_stays_a_product_state) {
    const GridSpec grid = make_grid(64, 64, 0.3);
    const ModelParams params{1.5, 0.8, 1.0, 0.0};
    // Product of two 1-D smooth profiles.
    auto f1 = [](double q) { return Complex(1.0 + 0.3 * std::cos(q), 0.2 * std::sin(2.0 * q)); };
    auto f2 = [](double q) { return std::polar(1.0 + 0.1 * std::cos(3.0 * q), 0.4 * std::sin(q)); };
    WaveField field = sample_field(grid, [&](double q1, double q2) { return f1(q1) * f2(q2); });
    for (int n = 0; n < 8; ++n) {
        field = step_period(field, params);
    }
    const WaveField pos = transform(field, Representation::Position);
    // A product state satisfies Phi(a,b) Phi(c,d) = Phi(a,d) Phi(c,b).
    double worst = 0.0;
    for (int a = 0; a < 64; a += 7) {
        for (int b = 0; b < 64; b += 5) {
            const Complex lhs = pos.at(a, b) * pos.at(11, 17);
            const Complex rhs = pos.at(a, 17) * pos.at(11, b);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    EXPECT_LT(worst * static_cast<double>(grid.cells()), 1e-10);
}

TEST(evolve, kick_shifts_bohm_momentum_by_force) {
    const GridSpec grid = make_grid(128, 64, 0.25);
    const ModelParams params{2.0, 0.9, 1.0, 0.2};
    const WaveField before = smooth_state(grid, 8);
    const WaveField after = apply_kick(before, params);
    const VectorGrid s_before = phase_gradient(before);
    const VectorGrid s_after = phase_gradient(after);
    for (int i1 = 0; i1 < grid.n1(); i1 += 3) {
        for (int i2 = 0; i2 < grid.n2(); i2 += 3) {
            const std::size_t i = grid.index(i1, i2);
            ASSERT_TRUE(s_before.valid[i] && s_after.valid[i]);
            EXPECT_NEAR(s_after.first[i] - s_before.first[i], params.k1 * std::sin(grid.position(Axis::Q1, i1)), 1e-6);
            EXPECT_NEAR(s_after.second[i] - s_before.second[i], params.k2 * std::sin(grid.position(Axis::Q2, i2)),
                        1e-6);
        }
    }
}

TEST(period_schedule, any_split_of_time_agrees) {
    const GridSpec grid = make_grid(64, 32, 0.2);
    const ModelParams params{1.2, 0.7, 0.8, 0.15};
    const WaveField initial = smooth_state(grid, 9);
    const PeriodSchedule schedule(params, initial, 0, 4);

    WaveField direct = initial;
    for (int n = 0; n < 3; ++n) {
        direct = step_period(direct, params);
    }
    const double t0 = 0.35;
    const WaveField expected = apply_free(direct, params, t0);
    const WaveField via_schedule = schedule.state_at(3 * params.period + t0);
    EXPECT_LT(max_distance(expected, via_schedule), 1e-12);
    EXPECT_NEAR(via_schedule.time(), 3 * params.period + t0, 1e-12);
    EXPECT_LT(max_distance(schedule.post_kick(2), schedule.state_at(2 * params.period)), 1e-15);
    EXPECT_THROW(schedule.post_kick(5), SchedulingError);
}

TEST(period_schedule, window_must_be_ordered) {
    const GridSpec grid = make_grid(8, 8, 0.2);
    const WaveField initial = init_momentum_eigenstate(grid, {0, 0});
    EXPECT_THROW(PeriodSchedule(kPaperCoupled, initial, 3, 2), ConfigError);
}
