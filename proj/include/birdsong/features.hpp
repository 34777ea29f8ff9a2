#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "birdsong/audio_io.hpp"
#include "birdsong/types.hpp"

namespace birdsong {

inline double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
inline double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

/// Bad [f_min, f_max] band, or a band/fft combination that leaves a filter
/// with no positive weight at the FFT bin resolution.
struct InvalidBand : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Triangular mel-spaced filters evaluated at FFT bin frequencies.
struct MelFilterbank {
    std::size_t n_filters = 0;
    std::vector<std::vector<double>> triangles;  // n_filters x (fft_size/2 + 1)
    std::vector<double> centers_hz;              // strictly increasing
    double f_min = 0.0;
    double f_max = 0.0;
    std::uint32_t sample_rate = 0;
    std::size_t fft_size = 0;
};

/// Per-frame cepstral coefficients.
struct MfccMatrix {
    std::vector<std::vector<double>> rows;  // one row per frame, n_coeffs wide
    std::size_t n_coeffs = 0;
    std::string source_id;
};

struct MfccParams {
    std::size_t n_coeffs = kNumCoeffs;
    double pre_emphasis = 0.97;
    double log_floor = 1e-10;
    /// When true, coefficients start at DCT index 0 (the overall-energy term)
    /// instead of index 1.
    bool include_energy_coeff = false;
};

/// Build n_filters triangles with centers uniformly spaced on the mel scale
/// between mel(f_min) and mel(f_max). Triangle i rises linearly from center
/// i-1 to center i and falls to center i+1, with f_min/f_max as the outer
/// edges of the first and last filter.
MelFilterbank build_filterbank(std::uint32_t sample_rate, std::size_t fft_size,
                               std::size_t n_filters, double f_min, double f_max);

/// Per-frame pipeline: pre-emphasis, Hamming window, zero-padded real FFT,
/// power spectrum, filterbank energies, log(e + floor), orthonormal DCT-II.
/// The energy coefficient (DCT index 0) is dropped unless
/// params.include_energy_coeff is set. Throws EmptyInput on an empty frame
/// sequence.
MfccMatrix mfcc(const FrameSequence& frames, const MelFilterbank& bank,
                const MfccParams& params = {});

/// Per-coefficient arithmetic mean across frames. The matrix must have
/// exactly kNumCoeffs columns.
Fingerprint mean_fingerprint(const MfccMatrix& m, std::optional<Label> label = std::nullopt);

}  // namespace birdsong
