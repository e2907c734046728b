#include "bohmrotor/wave_field.hpp"

#include <cmath>
#include <string>

#include "bohmrotor/errors.hpp"
#include "spectral.hpp"

namespace bohmrotor {

void ModelParams::validate() const {
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw ConfigError("kick period T must be positive");
    }
    if (!(std::abs(c_pp) < 1.0)) {
        throw ConfigError("|c_pp| must be < 1 for a positive-definite kinetic term");
    }
    if (!std::isfinite(k1) || !std::isfinite(k2)) {
        throw ConfigError("kick strengths must be finite");
    }
}

WaveField::WaveField(GridSpec grid, std::vector<Complex> amplitudes, Representation representation, double time)
    : grid_(grid), amplitudes_(std::move(amplitudes)), representation_(representation), time_(time) {
    if (amplitudes_.size() != grid_.cells()) {
        throw ConfigError("amplitude array size " + std::to_string(amplitudes_.size()) + " does not match grid");
    }
}

Complex WaveField::mode(int m1, int m2) const {
    if (representation_ != Representation::Momentum) {
        throw ConfigError("mode() requires the momentum representation");
    }
    if (!grid_.in_band(Axis::Q1, m1) || !grid_.in_band(Axis::Q2, m2)) {
        throw RangeError("momentum mode outside lattice band");
    }
    return at(grid_.slot_of_mode(Axis::Q1, m1), grid_.slot_of_mode(Axis::Q2, m2));
}

double WaveField::norm_squared() const {
    std::vector<double> weights(amplitudes_.size());
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        weights[i] = std::norm(amplitudes_[i]);
    }
    return detail::pairwise_sum(weights);
}

WaveField WaveField::with_time(double time) const { return WaveField(grid_, amplitudes_, representation_, time); }

WaveField transform(const WaveField& field, Representation target) {
    if (field.representation() == target) {
        return field;
    }
    std::vector<Complex> data(field.amplitudes().begin(), field.amplitudes().end());
    detail::fft2d(data, field.grid().n1(), field.grid().n2(),
                  target == Representation::Momentum ? detail::FftDirection::Forward
                                                     : detail::FftDirection::Backward);
    return WaveField(field.grid(), std::move(data), target, field.time());
}

WaveField init_momentum_eigenstate(const GridSpec& grid, const InitialStateSpec& spec) {
    if (!grid.in_band(Axis::Q1, spec.m1) || !grid.in_band(Axis::Q2, spec.m2)) {
        throw RangeError("initial momentum index outside lattice band");
    }
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(grid.cells()));
    std::vector<Complex> data(grid.cells());
    for (int i1 = 0; i1 < grid.n1(); ++i1) {
        // Integer part of m*j/n is dropped before scaling so the phase is exactly periodic.
        const long long r1 = (static_cast<long long>(spec.m1) * i1) % grid.n1();
        const double phase1 = kTwoPi * static_cast<double>(r1) / grid.n1() - spec.m1 * spec.q_offset;
        for (int i2 = 0; i2 < grid.n2(); ++i2) {
            const long long r2 = (static_cast<long long>(spec.m2) * i2) % grid.n2();
            const double phase2 = kTwoPi * static_cast<double>(r2) / grid.n2() - spec.m2 * spec.q_offset;
            data[grid.index(i1, i2)] = std::polar(amplitude, phase1 + phase2);
        }
    }
    return WaveField(grid, std::move(data), Representation::Position, 0.0);
}

} // namespace bohmrotor
