#include "bohmrotor/flow.hpp"

#include <algorithm>
#include <cmath>

#include "bohmrotor/errors.hpp"
#include "flow_detail.hpp"
#include "spectral.hpp"

namespace bohmrotor {

namespace detail {

namespace {

constexpr Complex kI{0.0, 1.0};

std::vector<Complex> derivative_spectrum(const GridSpec& grid, std::span<const Complex> momentum, Axis axis) {
    std::vector<Complex> out(momentum.begin(), momentum.end());
    for (int k1 = 0; k1 < grid.n1(); ++k1) {
        for (int k2 = 0; k2 < grid.n2(); ++k2) {
            const int m = axis == Axis::Q1 ? grid.mode_of_slot(Axis::Q1, k1) : grid.mode_of_slot(Axis::Q2, k2);
            out[grid.index(k1, k2)] *= kI * static_cast<double>(m);
        }
    }
    return out;
}

void to_position(const GridSpec& grid, std::vector<Complex>& data) {
    fft2d(data, grid.n1(), grid.n2(), FftDirection::Backward);
}

} // namespace

VectorGrid gradient_from_momentum(const GridSpec& grid, std::span<const Complex> momentum, double node_threshold) {
    std::vector<Complex> phi(momentum.begin(), momentum.end());
    std::vector<Complex> d1 = derivative_spectrum(grid, momentum, Axis::Q1);
    std::vector<Complex> d2 = derivative_spectrum(grid, momentum, Axis::Q2);
    to_position(grid, phi);
    to_position(grid, d1);
    to_position(grid, d2);

    const std::size_t cells = grid.cells();
    double max_density = 0.0;
    for (const auto& value : phi) {
        max_density = std::max(max_density, std::norm(value));
    }
    if (!(max_density > 0.0)) {
        throw DegenerateFieldError("wave field vanishes on every grid point");
    }
    const double floor = node_threshold * max_density;

    VectorGrid out{grid, std::vector<double>(cells), std::vector<double>(cells), std::vector<std::uint8_t>(cells)};
    for (std::size_t i = 0; i < cells; ++i) {
        const double density = std::norm(phi[i]);
        if (density < floor || density == 0.0) {
            out.valid[i] = 0;
            continue;
        }
        const Complex conj_phi = std::conj(phi[i]);
        out.first[i] = grid.hbar() * (conj_phi * d1[i]).imag() / density;
        out.second[i] = grid.hbar() * (conj_phi * d2[i]).imag() / density;
        out.valid[i] = 1;
    }
    return out;
}

VectorGrid velocity_from_momentum(const GridSpec& grid, std::span<const Complex> momentum,
                                  const ModelParams& params, double node_threshold) {
    VectorGrid grad = gradient_from_momentum(grid, momentum, node_threshold);
    const double c = params.c_pp;
    if (c != 0.0) {
        for (std::size_t i = 0; i < grad.first.size(); ++i) {
            const double s1 = grad.first[i];
            const double s2 = grad.second[i];
            grad.first[i] = s1 + c * s2;
            grad.second[i] = s2 + c * s1;
        }
    }
    return grad;
}

} // namespace detail

VectorGrid phase_gradient(const WaveField& field, double node_threshold) {
    const WaveField momentum = transform(field, Representation::Momentum);
    return detail::gradient_from_momentum(field.grid(), momentum.amplitudes(), node_threshold);
}

VectorGrid velocity_field(const WaveField& field, const ModelParams& params, double node_threshold) {
    const WaveField momentum = transform(field, Representation::Momentum);
    return detail::velocity_from_momentum(field.grid(), momentum.amplitudes(), params, node_threshold);
}

QuantumPotentialField quantum_potential(const WaveField& field, const ModelParams& params, double node_threshold) {
    const GridSpec& grid = field.grid();
    const WaveField position = transform(field, Representation::Position);
    const std::size_t cells = grid.cells();

    std::vector<Complex> amplitude(cells);
    double max_density = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        const double density = std::norm(position.amplitudes()[i]);
        max_density = std::max(max_density, density);
        amplitude[i] = std::sqrt(density);
    }
    if (!(max_density > 0.0)) {
        throw DegenerateFieldError("wave field vanishes on every grid point");
    }

    std::vector<Complex> spectrum = amplitude;
    detail::fft2d(spectrum, grid.n1(), grid.n2(), detail::FftDirection::Forward);

    // Laplacian-like operator -(m1^2 + m2^2 + 2 c m1 m2) in one pass.
    std::vector<Complex> curvature = spectrum;
    for (int k1 = 0; k1 < grid.n1(); ++k1) {
        const double m1 = grid.mode_of_slot(Axis::Q1, k1);
        for (int k2 = 0; k2 < grid.n2(); ++k2) {
            const double m2 = grid.mode_of_slot(Axis::Q2, k2);
            curvature[grid.index(k1, k2)] *= -(m1 * m1 + m2 * m2 + 2.0 * params.c_pp * m1 * m2);
        }
    }
    detail::fft2d(curvature, grid.n1(), grid.n2(), detail::FftDirection::Backward);

    const double floor = node_threshold * max_density;
    const double hbar2 = grid.hbar() * grid.hbar();
    QuantumPotentialField out{grid, std::vector<double>(cells), std::vector<std::uint8_t>(cells)};
    for (std::size_t i = 0; i < cells; ++i) {
        const double r = amplitude[i].real();
        if (r * r < floor || r == 0.0) {
            out.valid[i] = 0;
            continue;
        }
        out.values[i] = -0.5 * hbar2 * curvature[i].real() / r;
        out.valid[i] = 1;
    }
    return out;
}

VelocitySample interpolate(const VectorGrid& grid, double q1, double q2) {
    const GridSpec& spec = grid.grid;
    auto locate = [](double q, int n, int& lo, int& hi, double& frac) {
        double wrapped = q - kTwoPi * std::floor(q / kTwoPi);
        const double x = wrapped * n / kTwoPi;
        double base = std::floor(x);
        frac = x - base;
        lo = static_cast<int>(base) % n;
        if (lo < 0) {
            lo += n;
        }
        hi = lo + 1 == n ? 0 : lo + 1;
    };
    int a0 = 0;
    int a1 = 0;
    int b0 = 0;
    int b1 = 0;
    double fa = 0.0;
    double fb = 0.0;
    locate(q1, spec.n1(), a0, a1, fa);
    locate(q2, spec.n2(), b0, b1, fb);

    const std::size_t i00 = spec.index(a0, b0);
    const std::size_t i01 = spec.index(a0, b1);
    const std::size_t i10 = spec.index(a1, b0);
    const std::size_t i11 = spec.index(a1, b1);
    if (!grid.valid[i00] || !grid.valid[i01] || !grid.valid[i10] || !grid.valid[i11]) {
        return {};
    }
    const double w00 = (1.0 - fa) * (1.0 - fb);
    const double w01 = (1.0 - fa) * fb;
    const double w10 = fa * (1.0 - fb);
    const double w11 = fa * fb;
    VelocitySample sample;
    sample.v1 = w00 * grid.first[i00] + w01 * grid.first[i01] + w10 * grid.first[i10] + w11 * grid.first[i11];
    sample.v2 = w00 * grid.second[i00] + w01 * grid.second[i01] + w10 * grid.second[i10] + w11 * grid.second[i11];
    sample.valid = true;
    return sample;
}

FlowContext::FlowContext(const WaveField& field, const ModelParams& params)
    : velocity_(velocity_field(field, params)) {}

VelocitySample eval_velocity(const FlowContext& context, double q1, double q2) { return context.sample(q1, q2); }

VelocitySample exact_velocity(const WaveField& field, const ModelParams& params, double q1, double q2) {
    const GridSpec& grid = field.grid();
    const WaveField momentum = transform(field, Representation::Momentum);

    std::vector<Complex> basis2(grid.n2());
    for (int k2 = 0; k2 < grid.n2(); ++k2) {
        basis2[k2] = std::polar(1.0, grid.mode_of_slot(Axis::Q2, k2) * q2);
    }
    Complex phi = 0.0;
    Complex d1 = 0.0;
    Complex d2 = 0.0;
    for (int k1 = 0; k1 < grid.n1(); ++k1) {
        const int m1 = grid.mode_of_slot(Axis::Q1, k1);
        Complex row = 0.0;
        Complex row_d2 = 0.0;
        for (int k2 = 0; k2 < grid.n2(); ++k2) {
            const Complex term = momentum.at(k1, k2) * basis2[k2];
            row += term;
            row_d2 += term * static_cast<double>(grid.mode_of_slot(Axis::Q2, k2));
        }
        const Complex basis1 = std::polar(1.0, m1 * q1);
        phi += row * basis1;
        d1 += row * basis1 * static_cast<double>(m1);
        d2 += row_d2 * basis1;
    }
    d1 *= Complex(0.0, 1.0);
    d2 *= Complex(0.0, 1.0);
    const double density = std::norm(phi);
    if (density == 0.0) {
        return {};
    }
    const double s1 = grid.hbar() * (std::conj(phi) * d1).imag() / density;
    const double s2 = grid.hbar() * (std::conj(phi) * d2).imag() / density;
    return {s1 + params.c_pp * s2, s2 + params.c_pp * s1, true};
}

} // namespace bohmrotor
