#include "birdsong/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "birdsong/rng.hpp"

namespace birdsong {
namespace {

constexpr double kDuration = 1.5;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double centered(std::mt19937_64& rng) { return 2.0 * uniform01(rng) - 1.0; }

std::vector<double> render_mgb(std::size_t n, double rate, std::mt19937_64& rng) {
    const double f0 = 2000.0 * (1.0 + 0.01 * centered(rng));
    constexpr double kAmps[] = {1.0, 0.55, 0.30, 0.18, 0.10};
    double amps[5];
    double phases[5];
    for (std::size_t k = 0; k < 5; ++k) {
        amps[k] = kAmps[k] * (1.0 + 0.05 * centered(rng));
        phases[k] = kTwoPi * uniform01(rng);
    }
    const double trem_rate = 5.5 + uniform01(rng);
    const double trem_phase = kTwoPi * uniform01(rng);

    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / rate;
        double v = 0.0;
        for (std::size_t k = 0; k < 5; ++k) {
            v += amps[k] * std::sin(kTwoPi * (k + 1) * f0 * t + phases[k]);
        }
        const double tremolo = 1.0 - 0.3 * (0.5 + 0.5 * std::sin(kTwoPi * trem_rate * t + trem_phase));
        s[i] = v * tremolo + 0.003 * centered(rng);
    }
    return s;
}

std::vector<double> render_other(std::size_t variant, std::size_t n, double rate,
                                 std::mt19937_64& rng) {
    std::vector<double> s(n);
    switch (variant % 5) {
        case 0: {  // low tone
            const double f = 300.0 + 400.0 * uniform01(rng);
            const double p = kTwoPi * uniform01(rng);
            for (std::size_t i = 0; i < n; ++i) {
                const double t = static_cast<double>(i) / rate;
                s[i] = std::sin(kTwoPi * f * t + p) + 0.3 * std::sin(2.0 * kTwoPi * f * t);
            }
            break;
        }
        case 1: {  // high tone
            const double f = 4500.0 + 2000.0 * uniform01(rng);
            const double p = kTwoPi * uniform01(rng);
            for (std::size_t i = 0; i < n; ++i) {
                const double t = static_cast<double>(i) / rate;
                s[i] = std::sin(kTwoPi * f * t + p) + 0.25 * std::sin(2.0 * kTwoPi * f * t);
            }
            break;
        }
        case 2: {  // rising chirp
            const double lo = 500.0 + 300.0 * uniform01(rng);
            const double hi = 3500.0 + 1500.0 * uniform01(rng);
            for (std::size_t i = 0; i < n; ++i) {
                const double t = static_cast<double>(i) / rate;
                s[i] = std::sin(kTwoPi * (lo * t + (hi - lo) * t * t / (2.0 * kDuration)));
            }
            break;
        }
        case 3: {  // broadband noise
            for (std::size_t i = 0; i < n; ++i) s[i] = centered(rng);
            break;
        }
        default: {  // low harmonic stack
            const double f0 = 350.0 + 200.0 * uniform01(rng);
            double phases[8];
            for (double& p : phases) p = kTwoPi * uniform01(rng);
            for (std::size_t i = 0; i < n; ++i) {
                const double t = static_cast<double>(i) / rate;
                double v = 0.0;
                for (std::size_t k = 0; k < 8; ++k) {
                    v += std::sin(kTwoPi * (k + 1) * f0 * t + phases[k]) / static_cast<double>(k + 1);
                }
                s[i] = v;
            }
            break;
        }
    }
    return s;
}

}  // namespace

AudioClip synth_fixture_clip(std::size_t index, Label label, std::uint64_t seed,
                             std::uint32_t sample_rate) {
    const double rate = static_cast<double>(sample_rate);
    const std::size_t n = static_cast<std::size_t>(kDuration * rate);
    std::mt19937_64 rng(derive_seed(seed, index));

    std::vector<double> s = label == Label::Mgb ? render_mgb(n, rate, rng)
                                                : render_other(index >= 7 ? index - 7 : index, n,
                                                               rate, rng);

    double peak = 0.0;
    for (double v : s) peak = std::max(peak, std::abs(v));
    const double gain = peak > 0.0 ? 0.5 / peak : 0.0;
    const double fade = 0.01 * rate;  // 10 ms ramp against edge clicks
    for (std::size_t i = 0; i < n; ++i) {
        const double ramp_in = std::min(1.0, static_cast<double>(i) / fade);
        const double ramp_out = std::min(1.0, static_cast<double>(n - 1 - i) / fade);
        s[i] *= gain * std::min(ramp_in, ramp_out);
    }

    AudioClip clip;
    clip.samples = std::move(s);
    clip.sample_rate = sample_rate;
    return clip;
}

std::vector<FixtureFile> generate_fixture_corpus(const std::string& dir, std::uint64_t seed) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    std::vector<FixtureFile> files;
    char name[32];
    for (std::size_t i = 0; i < 24; ++i) {
        const Label label = i < 7 ? Label::Mgb : Label::Other;
        if (label == Label::Mgb) {
            std::snprintf(name, sizeof(name), "mgb_%02zu.wav", i + 1);
        } else {
            std::snprintf(name, sizeof(name), "other_%02zu.wav", i - 6);
        }
        AudioClip clip = synth_fixture_clip(i, label, seed);
        clip.source_id = name;
        write_wav_file((fs::path(dir) / name).string(), clip);
        files.push_back({name, label});
    }

    const fs::path labels = fs::path(dir) / "labels.csv";
    std::ofstream out(labels, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + labels.string() + " for writing");
    for (const FixtureFile& f : files) out << f.name << "," << label_name(f.label) << "\n";
    if (!out.flush()) throw std::runtime_error("failed writing " + labels.string());
    return files;
}

}  // namespace birdsong
