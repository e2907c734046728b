#include "bohmrotor/grid.hpp"

#include <cmath>
#include <string>

#include "bohmrotor/errors.hpp"

namespace bohmrotor {

namespace {

bool is_power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

} // namespace

GridSpec GridSpec::make(int n1, int n2, double hbar) {
    if (!is_power_of_two(n1) || !is_power_of_two(n2)) {
        throw ConfigError("grid sizes must be powers of two >= 2, got " + std::to_string(n1) + "x" +
                          std::to_string(n2));
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw ConfigError("hbar must be positive and finite");
    }
    return GridSpec(n1, n2, hbar);
}

GridSpec make_grid(int n1, int n2, double hbar) { return GridSpec::make(n1, n2, hbar); }

int snap_momentum(const GridSpec& grid, double p, Axis axis) {
    const double band = grid.hbar() * grid.points(axis) / 2.0;
    if (!std::isfinite(p) || p < -band || p >= band) {
        throw RangeError("momentum " + std::to_string(p) + " outside representable band");
    }
    // nearbyint honours the default round-half-to-even mode.
    const int m = static_cast<int>(std::nearbyint(p / grid.hbar()));
    if (!grid.in_band(axis, m)) {
        throw RangeError("momentum " + std::to_string(p) + " snaps outside the lattice");
    }
    return m;
}

} // namespace bohmrotor
