#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace birdsong {

/// In-place iterative radix-2 FFT. Length must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a);

/// Power spectrum |X_k|^2 of a real signal zero-padded to fft_size, for the
/// fft_size/2 + 1 non-redundant bins. fft_size must be a power of two and at
/// least the signal length.
std::vector<double> power_spectrum(std::span<const double> signal, std::size_t fft_size);

/// Orthonormal DCT-II: y_i = s_i * sum_j x_j cos(pi*i*(2j+1)/(2M)),
/// s_0 = sqrt(1/M), s_i = sqrt(2/M) otherwise.
std::vector<double> dct2_ortho(std::span<const double> x);

/// Inverse of dct2_ortho (orthonormal DCT-III).
std::vector<double> idct2_ortho(std::span<const double> y);

/// Symmetric Hamming window of length n.
std::vector<double> hamming_window(std::size_t n);

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace birdsong
