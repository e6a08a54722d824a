#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mqc::detail {

enum class FftDirection { forward, backward };

/// In-place unnormalized complex DFT on a row-major hypercube of side n:
///   forward:  X_k = sum_m x_m e^{-2 pi i k m / n}
///   backward: X_k = sum_m x_m e^{+2 pi i k m / n}
void fft_inplace(std::span<std::complex<double>> data, int n, int dim, FftDirection dir);

}  // namespace mqc::detail
