#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "birdsong/audio_io.hpp"
#include "birdsong/types.hpp"

namespace birdsong {

struct FixtureFile {
    std::string name;
    Label label = Label::Other;
};

/// Synthesizes one corpus clip: 1.5 s of 16-bit mono audio. MGB clips share
/// one harmonic template (2 kHz stack with tremolo) with per-file jitter;
/// Other clips cycle through five dissimilar templates (low/high tones,
/// chirp, noise, low harmonic stack). Deterministic in (index, label, seed).
AudioClip synth_fixture_clip(std::size_t index, Label label, std::uint64_t seed,
                             std::uint32_t sample_rate = 44100);

/// Writes mgb_01.wav .. mgb_07.wav, other_01.wav .. other_17.wav and a
/// labels.csv mapping each file name to its class. Returns the file list in
/// written order.
std::vector<FixtureFile> generate_fixture_corpus(const std::string& dir, std::uint64_t seed);

}  // namespace birdsong
