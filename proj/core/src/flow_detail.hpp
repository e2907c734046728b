#pragma once

#include <span>

#include "bohmrotor/flow.hpp"

namespace bohmrotor::detail {

/// Velocity grids straight from momentum-representation amplitudes.
VectorGrid velocity_from_momentum(const GridSpec& grid, std::span<const Complex> momentum,
                                  const ModelParams& params, double node_threshold);

/// Phase-gradient grids straight from momentum-representation amplitudes.
VectorGrid gradient_from_momentum(const GridSpec& grid, std::span<const Complex> momentum, double node_threshold);

} // namespace bohmrotor::detail
