#include "birdsong/features.hpp"

#include <algorithm>
#include <cmath>

#include "birdsong/dsp.hpp"

namespace birdsong {

MelFilterbank build_filterbank(std::uint32_t sample_rate, std::size_t fft_size,
                               std::size_t n_filters, double f_min, double f_max) {
    if (sample_rate == 0) throw std::invalid_argument("sample_rate must be positive");
    if (!is_power_of_two(fft_size)) throw std::invalid_argument("fft_size must be a power of two");
    if (n_filters < 1) throw std::invalid_argument("n_filters must be at least 1");
    double nyquist = sample_rate / 2.0;
    if (!(0.0 <= f_min && f_min < f_max && f_max <= nyquist))
        throw InvalidBand("need 0 <= f_min < f_max <= sample_rate/2, got [" +
                          std::to_string(f_min) + ", " + std::to_string(f_max) + "] at " +
                          std::to_string(sample_rate) + " Hz");

    MelFilterbank bank;
    bank.n_filters = n_filters;
    bank.f_min = f_min;
    bank.f_max = f_max;
    bank.sample_rate = sample_rate;
    bank.fft_size = fft_size;

    // n_filters + 2 edge points, uniform in mel; centers are the interior ones
    double mel_lo = hz_to_mel(f_min);
    double mel_hi = hz_to_mel(f_max);
    std::vector<double> edges(n_filters + 2);
    for (std::size_t i = 0; i < edges.size(); ++i)
        edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                          static_cast<double>(n_filters + 1));
    bank.centers_hz.assign(edges.begin() + 1, edges.end() - 1);

    const std::size_t n_bins = fft_size / 2 + 1;
    const double bin_hz = static_cast<double>(sample_rate) / static_cast<double>(fft_size);
    bank.triangles.assign(n_filters, std::vector<double>(n_bins, 0.0));
    for (std::size_t j = 0; j < n_filters; ++j) {
        double lo = edges[j], mid = edges[j + 1], hi = edges[j + 2];
        bool any_positive = false;
        for (std::size_t k = 0; k < n_bins; ++k) {
            double f = static_cast<double>(k) * bin_hz;
            double w = 0.0;
            if (f > lo && f <= mid)
                w = (f - lo) / (mid - lo);
            else if (f > mid && f < hi)
                w = (hi - f) / (hi - mid);
            bank.triangles[j][k] = w;
            any_positive = any_positive || w > 0.0;
        }
        if (!any_positive)
            throw InvalidBand("filter " + std::to_string(j) +
                              " has no positive weight at this FFT resolution; use fewer "
                              "filters or a larger fft_size");
    }
    return bank;
}

MfccMatrix mfcc(const FrameSequence& frames, const MelFilterbank& bank, const MfccParams& params) {
    if (frames.frames.empty()) throw EmptyInput("mfcc: empty frame sequence");
    if (bank.fft_size < frames.frame_len)
        throw std::invalid_argument("filterbank fft_size smaller than frame length");
    if (params.n_coeffs > bank.n_filters)
        throw std::invalid_argument("n_coeffs exceeds the number of mel filters");
    if (params.n_coeffs == 0) throw std::invalid_argument("n_coeffs must be positive");
    if (!params.include_energy_coeff && params.n_coeffs + 1 > bank.n_filters)
        throw std::invalid_argument(
            "n_coeffs + 1 filters required when the energy coefficient is dropped");

    const auto window = hamming_window(frames.frame_len);
    const std::size_t first_index = params.include_energy_coeff ? 0 : 1;

    MfccMatrix out;
    out.n_coeffs = params.n_coeffs;
    out.rows.reserve(frames.frames.size());
    std::vector<double> work(frames.frame_len);
    for (const auto& frame : frames.frames) {
        // pre-emphasis with x[-1] taken as 0, then window
        work[0] = frame[0] * window[0];
        for (std::size_t t = 1; t < frame.size(); ++t)
            work[t] = (frame[t] - params.pre_emphasis * frame[t - 1]) * window[t];

        auto power = power_spectrum(work, bank.fft_size);

        std::vector<double> log_energies(bank.n_filters);
        for (std::size_t j = 0; j < bank.n_filters; ++j) {
            double e = 0.0;
            const auto& tri = bank.triangles[j];
            for (std::size_t k = 0; k < power.size(); ++k) e += tri[k] * power[k];
            log_energies[j] = std::log(e + params.log_floor);
        }

        auto cepstrum = dct2_ortho(log_energies);
        out.rows.emplace_back(cepstrum.begin() + static_cast<std::ptrdiff_t>(first_index),
                              cepstrum.begin() +
                                  static_cast<std::ptrdiff_t>(first_index + params.n_coeffs));
    }
    return out;
}

Fingerprint mean_fingerprint(const MfccMatrix& m, std::optional<Label> label) {
    if (m.rows.empty()) throw EmptyInput("mean_fingerprint: empty MFCC matrix");
    if (m.n_coeffs != kNumCoeffs)
        throw std::invalid_argument("fingerprints require exactly " + std::to_string(kNumCoeffs) +
                                    " coefficients, matrix has " + std::to_string(m.n_coeffs));
    Fingerprint fp;
    fp.label = label;
    fp.source_id = m.source_id;
    for (std::size_t j = 0; j < kNumCoeffs; ++j) {
        double acc = 0.0;
        for (const auto& row : m.rows) acc += row[j];
        fp.coeffs[j] = acc / static_cast<double>(m.rows.size());
    }
    return fp;
}

}  // namespace birdsong
