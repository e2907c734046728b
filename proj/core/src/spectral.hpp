#pragma once

#include <complex>
#include <span>

namespace bohmrotor::detail {

enum class FftDirection { Forward, Backward };

/// In-place unitary 2-D DFT on a row-major n1 x n2 array.
/// Forward uses exp(-i m q), Backward exp(+i m q); both are scaled by 1/sqrt(n1 n2).
void fft2d(std::span<std::complex<double>> data, int n1, int n2, FftDirection direction);

/// Sum in a fixed pairwise order; reproducible for a given input length.
double pairwise_sum(std::span<const double> values);

} // namespace bohmrotor::detail
