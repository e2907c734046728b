#include "bohmrotor/experiment/config.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "bohmrotor/errors.hpp"
#include "bohmrotor/experiment/format.hpp"

using namespace bohmrotor;
using namespace bohmrotor::experiment;

TEST(config, desk_profile_defaults) {
    const ExperimentConfig config = profile_defaults("desk");
    config.validate();
    const GridSpec grid = config.grid_spec();
    EXPECT_EQ(grid.n1(), 1024);
    EXPECT_EQ(grid.n2(), 128);
    EXPECT_DOUBLE_EQ(grid.hbar(), kTwoPi * 11.0 / 1024.0);
    EXPECT_DOUBLE_EQ(config.run.traj_dt, 1e-3);
    // (pi/2) / hbar = 23.27
    EXPECT_EQ(config.initial_state().m1, 23);
    EXPECT_EQ(config.initial_state().m2, 23);
    EXPECT_DOUBLE_EQ(config.model.k1, 2.0);
    EXPECT_DOUBLE_EQ(config.model.k2, 0.9);
    EXPECT_DOUBLE_EQ(config.model.c_pp, 0.2);
}

TEST(config, paper_profile) {
    const ExperimentConfig config = profile_defaults("paper");
    const GridSpec grid = config.grid_spec();
    EXPECT_EQ(grid.n1(), 4096);
    EXPECT_EQ(grid.n2(), 512);
    EXPECT_DOUBLE_EQ(grid.hbar(), kTwoPi * 43.0 / 4096.0);
    EXPECT_DOUBLE_EQ(config.run.traj_dt, 2.5e-6);
    EXPECT_EQ(config.initial_state().m1, 24);
    EXPECT_THROW(profile_defaults("laptop"), ConfigError);
}

TEST(config, settings_and_profile_order) {
    ExperimentConfig config;
    apply_settings(config, {{"grid.n1", "256"}, {"profile", "paper"}, {"model.T", "0.5"}, {"initial.m1", "-3"}});
    EXPECT_EQ(config.profile, "paper");
    EXPECT_EQ(config.grid.n1, 256);
    EXPECT_EQ(config.grid.n2, 512);
    EXPECT_DOUBLE_EQ(config.model.period, 0.5);
    EXPECT_EQ(config.initial_state().m1, -3);
}

TEST(config, hbar_escape_hatch) {
    ExperimentConfig config;
    apply_setting(config, "grid.hbar", "0.05");
    EXPECT_DOUBLE_EQ(config.grid_spec().hbar(), 0.05);
    EXPECT_EQ(config.initial_state().m1, 31);
}

TEST(config, rejects_bad_input) {
    ExperimentConfig config;
    EXPECT_THROW(apply_setting(config, "grid.n3", "4"), ConfigError);
    EXPECT_THROW(apply_setting(config, "grid.n1", "1.5"), ConfigError);
    EXPECT_THROW(apply_setting(config, "model.k1", "two"), ConfigError);
    EXPECT_THROW(apply_setting(config, "run.seed", "-1"), ConfigError);
    EXPECT_THROW(split_assignment("model.k1"), ConfigError);
    EXPECT_EQ(split_assignment("run.probe_layout=line:0:4").second, "line:0:4");

    auto invalid = [](const std::string& key, const std::string& value) {
        ExperimentConfig c;
        apply_setting(c, key, value);
        EXPECT_THROW(c.validate(), ConfigError) << key << "=" << value;
    };
    invalid("grid.n1", "100");
    invalid("grid.hbar_numerator", "0");
    invalid("grid.hbar", "-1");
    invalid("model.c_pp", "1");
    invalid("model.T", "0");
    invalid("initial.m1", "512");
    invalid("run.n_periods", "0");
    invalid("run.traj_dt", "0");
    invalid("run.traj_dt", "2");
    invalid("run.reject_threshold", "0");
    invalid("run.probe_layout", "ring:4");
    invalid("run.probe_layout", "line:0:0");
    invalid("output.preset", "fig9");
}

TEST(config, parses_ini_text) {
    const ExperimentConfig config = parse_config(
        "; comment\n"
        "profile = desk\n"
        "[grid]\n"
        "n1 = 256\n"
        "n2 = 32\n"
        "[model]\n"
        "c_pp = 0.1\n"
        "[run]\n"
        "probe_layout = line:pi/2:8\n"
        "seed = 99\n"
        "[output]\n"
        "preset = fig3a\n");
    EXPECT_EQ(config.grid.n1, 256);
    EXPECT_EQ(config.grid.n2, 32);
    EXPECT_DOUBLE_EQ(config.model.c_pp, 0.1);
    EXPECT_EQ(config.run.seed, 99u);
    EXPECT_EQ(config.output.preset, "fig3a");
    EXPECT_THROW(parse_config("[grid]\nn1 = 256\nn1 = 512\n"), ConfigError);
    EXPECT_THROW(parse_config("[grid]\nsize = 256\n"), ConfigError);
    EXPECT_THROW(parse_config("[grid\n"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/config.ini"), ConfigError);
}

TEST(config, hash_tracks_content_only) {
    ExperimentConfig a;
    ExperimentConfig b;
    b.output.directory = "/elsewhere";
    EXPECT_EQ(a.hash(), b.hash());
    apply_setting(b, "run.seed", "2");
    EXPECT_NE(a.hash(), b.hash());

    // Re-applying the echo reproduces the configuration.
    ExperimentConfig c;
    apply_settings(c, b.echo());
    EXPECT_EQ(c.hash(), b.hash());
}

TEST(format, seventeen_significant_digits) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(2.0), "2");
    EXPECT_EQ(format_double(-1.5e-20), "-1.5000000000000001e-20");
    EXPECT_EQ(format_double(std::nan("")), "nan");
    EXPECT_EQ(parse_double(format_double(kPi)), kPi);
    EXPECT_EQ(format_hex(255), "0x00000000000000ff");
}

TEST(format, parses_multiples_of_pi) {
    EXPECT_DOUBLE_EQ(parse_double("pi"), kPi);
    EXPECT_DOUBLE_EQ(parse_double("-pi"), -kPi);
    EXPECT_DOUBLE_EQ(parse_double("2pi"), kTwoPi);
    EXPECT_DOUBLE_EQ(parse_double("0.5*pi"), kPi / 2.0);
    EXPECT_DOUBLE_EQ(parse_double("pi/4"), kPi / 4.0);
    EXPECT_DOUBLE_EQ(parse_double(" +1e-3 "), 1e-3);
    EXPECT_THROW(parse_double("pi*2"), ConfigError);
    EXPECT_THROW(parse_double("1e999"), ConfigError);
    EXPECT_THROW(parse_double(""), ConfigError);
}

TEST(format, fnv1a_reference_values) {
    EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ULL);
}
