#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bohmrotor/grid.hpp"

namespace bohmrotor {

using Complex = std::complex<double>;

enum class Representation { Position, Momentum };

/// Kick strengths, kick period and momentum coupling of the two-rotor model.
struct ModelParams {
    double k1 = 0.0;
    double k2 = 0.0;
    double period = 1.0;
    double c_pp = 0.0;

    /// Throws ConfigError unless period > 0 and |c_pp| < 1.
    void validate() const;

    static ModelParams single_rotor(double k, double period) { return {k, 0.0, period, 0.0}; }
};

/// Product of momentum eigenstates, indexed on the momentum lattice.
struct InitialStateSpec {
    int m1 = 0;
    int m2 = 0;
    double q_offset = kPi / 4.0;
};

/// Complex amplitudes on a GridSpec in one representation at one time.
///
/// Normalization is discrete: sum |a|^2 = 1 for a physical state. In the
/// momentum representation, slot (k1, k2) holds mode (m1, m2) as given by
/// GridSpec::mode_of_slot. Instances are immutable.
class WaveField {
  public:
    WaveField(GridSpec grid, std::vector<Complex> amplitudes, Representation representation, double time);

    const GridSpec& grid() const { return grid_; }
    Representation representation() const { return representation_; }
    double time() const { return time_; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }

    Complex at(int i1, int i2) const { return amplitudes_[grid_.index(i1, i2)]; }
    /// Amplitude of lattice mode (m1, m2); requires the Momentum representation.
    Complex mode(int m1, int m2) const;

    double norm_squared() const;

    WaveField with_time(double time) const;
    /// Moves the amplitude storage out; the field is left empty.
    std::vector<Complex> release() && { return std::move(amplitudes_); }

  private:
    GridSpec grid_;
    std::vector<Complex> amplitudes_;
    Representation representation_;
    double time_;
};

/// Unitary DFT pair. Position basis function of mode m is exp(+i m q).
WaveField transform(const WaveField& field, Representation target);

/// Position-representation plane wave exp[+(i/hbar) p0 (q - q_offset)] in both
/// axes with p0 = hbar * m, at time 0 and unit discrete norm.
WaveField init_momentum_eigenstate(const GridSpec& grid, const InitialStateSpec& spec);

} // namespace bohmrotor
