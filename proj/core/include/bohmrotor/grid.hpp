#pragma once

#include <cstddef>

namespace bohmrotor {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383280;

enum class Axis { Q1 = 0, Q2 = 1 };

/// Periodic discretization of the configuration torus [0, 2pi)^2 together with hbar.
///
/// Position samples sit at q_j = 2 pi j / n. The conjugate momentum lattice is
/// p = hbar * m with integer m in [-n/2, n/2). Amplitude arrays are stored
/// row-major with the q1 index slowest: index = i1 * n2 + i2.
class GridSpec {
  public:
    /// Throws ConfigError unless n1, n2 are powers of two >= 2 and hbar > 0.
    static GridSpec make(int n1, int n2, double hbar);

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    double hbar() const { return hbar_; }
    int points(Axis axis) const { return axis == Axis::Q1 ? n1_ : n2_; }
    std::size_t cells() const { return static_cast<std::size_t>(n1_) * static_cast<std::size_t>(n2_); }
    std::size_t index(int i1, int i2) const {
        return static_cast<std::size_t>(i1) * static_cast<std::size_t>(n2_) + static_cast<std::size_t>(i2);
    }

    double spacing(Axis axis) const { return kTwoPi / points(axis); }
    double position(Axis axis, int j) const { return kTwoPi * j / points(axis); }

    int min_mode(Axis axis) const { return -points(axis) / 2; }
    int max_mode(Axis axis) const { return points(axis) / 2 - 1; }
    bool in_band(Axis axis, int m) const { return m >= min_mode(axis) && m <= max_mode(axis); }

    /// Momentum mode carried by storage slot k of a momentum-representation array.
    int mode_of_slot(Axis axis, int k) const {
        const int n = points(axis);
        return k < n / 2 ? k : k - n;
    }
    /// Storage slot of momentum mode m (m must be in band).
    int slot_of_mode(Axis axis, int m) const {
        const int n = points(axis);
        return m >= 0 ? m : m + n;
    }

    double momentum(int m) const { return hbar_ * m; }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

  private:
    GridSpec(int n1, int n2, double hbar) : n1_(n1), n2_(n2), hbar_(hbar) {}

    int n1_;
    int n2_;
    double hbar_;
};

GridSpec make_grid(int n1, int n2, double hbar);

/// Nearest lattice index to momentum p on the given axis, ties to even.
/// Throws RangeError if p lies outside the representable band.
int snap_momentum(const GridSpec& grid, double p, Axis axis = Axis::Q1);

} // namespace bohmrotor
