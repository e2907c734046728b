#pragma once

#include <cstdint>
#include <vector>

#include "bohmrotor/wave_field.hpp"

namespace bohmrotor {

/// Grid points with |Phi|^2 below this fraction of max |Phi|^2 are treated as nodes.
inline constexpr double kNodeThreshold = 1e-12;

/// Two real grids (one per axis) with a per-point validity mask.
struct VectorGrid {
    GridSpec grid;
    std::vector<double> first;
    std::vector<double> second;
    std::vector<std::uint8_t> valid;
};

/// Bohm momentum (dS/dq1, dS/dq2) = hbar Im[conj(Phi) dPhi/dq_i] / |Phi|^2,
/// with dPhi/dq_i taken spectrally. Throws DegenerateFieldError on an all-zero field.
VectorGrid phase_gradient(const WaveField& field, double node_threshold = kNodeThreshold);

/// Particle velocity (S1 + c_pp S2, S2 + c_pp S1) with S_i the Bohm momentum.
VectorGrid velocity_field(const WaveField& field, const ModelParams& params,
                          double node_threshold = kNodeThreshold);

struct QuantumPotentialField {
    GridSpec grid;
    std::vector<double> values;
    std::vector<std::uint8_t> valid;
};

/// V_Q = -(hbar^2 / 2R)(R_11 + R_22 + 2 c_pp R_12) with R = |Phi| and spectral derivatives.
/// Values at node-flagged points are set to zero and marked invalid.
QuantumPotentialField quantum_potential(const WaveField& field, const ModelParams& params,
                                        double node_threshold = kNodeThreshold);

struct VelocitySample {
    double v1 = 0.0;
    double v2 = 0.0;
    bool valid = false;
};

/// Bilinear periodic interpolation of a vector grid at (q1 mod 2pi, q2 mod 2pi).
/// Invalid if any stencil corner is invalid.
VelocitySample interpolate(const VectorGrid& grid, double q1, double q2);

/// Velocity grids of one field snapshot, ready for off-grid sampling.
class FlowContext {
  public:
    FlowContext(const WaveField& field, const ModelParams& params);
    explicit FlowContext(VectorGrid velocity) : velocity_(std::move(velocity)) {}

    const VectorGrid& velocity() const { return velocity_; }
    VelocitySample sample(double q1, double q2) const { return interpolate(velocity_, q1, q2); }

  private:
    VectorGrid velocity_;
};

VelocitySample eval_velocity(const FlowContext& context, double q1, double q2);

/// Velocity from a direct Fourier-series evaluation of Phi and its gradient at
/// an arbitrary point. O(n1 n2) per call; meant for validation.
VelocitySample exact_velocity(const WaveField& field, const ModelParams& params, double q1, double q2);

} // namespace bohmrotor
