#include "birdsong/dsp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace birdsong {

void fft_pow2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft length must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::vector<double> power_spectrum(std::span<const double> signal, std::size_t fft_size) {
    if (!is_power_of_two(fft_size)) throw std::invalid_argument("fft_size must be a power of two");
    if (signal.size() > fft_size) throw std::invalid_argument("signal longer than fft_size");
    std::vector<std::complex<double>> buf(fft_size, {0.0, 0.0});
    for (std::size_t i = 0; i < signal.size(); ++i) buf[i] = {signal[i], 0.0};
    fft_pow2(buf);
    std::vector<double> power(fft_size / 2 + 1);
    for (std::size_t k = 0; k < power.size(); ++k) power[k] = std::norm(buf[k]);
    return power;
}

std::vector<double> dct2_ortho(std::span<const double> x) {
    const std::size_t m = x.size();
    if (m == 0) throw std::invalid_argument("dct of empty vector");
    std::vector<double> y(m);
    const double scale0 = std::sqrt(1.0 / static_cast<double>(m));
    const double scale = std::sqrt(2.0 / static_cast<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            acc += x[j] * std::cos(std::numbers::pi * static_cast<double>(i) *
                                   (2.0 * static_cast<double>(j) + 1.0) /
                                   (2.0 * static_cast<double>(m)));
        y[i] = (i == 0 ? scale0 : scale) * acc;
    }
    return y;
}

std::vector<double> idct2_ortho(std::span<const double> y) {
    const std::size_t m = y.size();
    if (m == 0) throw std::invalid_argument("idct of empty vector");
    std::vector<double> x(m);
    const double scale0 = std::sqrt(1.0 / static_cast<double>(m));
    const double scale = std::sqrt(2.0 / static_cast<double>(m));
    for (std::size_t j = 0; j < m; ++j) {
        double acc = scale0 * y[0];
        for (std::size_t i = 1; i < m; ++i)
            acc += scale * y[i] *
                   std::cos(std::numbers::pi * static_cast<double>(i) *
                            (2.0 * static_cast<double>(j) + 1.0) / (2.0 * static_cast<double>(m)));
        x[j] = acc;
    }
    return x;
}

std::vector<double> hamming_window(std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (n < 2) return w;
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(n - 1));
    return w;
}

}  // namespace birdsong
