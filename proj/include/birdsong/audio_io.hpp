#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace birdsong {

/// Decoded mono PCM signal. Samples are scaled by 1/32768, so every value
/// lies in [-1, 1) with -32768 mapping exactly to -1.0.
struct AudioClip {
    std::vector<double> samples;
    std::uint32_t sample_rate = 0;
    std::string source_id;
};

/// Overlapping fixed-length analysis frames cut from a clip.
struct FrameSequence {
    std::vector<std::vector<double>> frames;
    std::size_t frame_len = 0;
    std::size_t hop = 0;
    std::uint32_t sample_rate = 0;
};

/// Bad RIFF magic, truncated chunk, missing fmt/data chunk.
struct MalformedContainer : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Well-formed container but not 16-bit signed mono PCM.
class UnsupportedFormat : public std::runtime_error {
public:
    UnsupportedFormat(std::string field, const std::string& detail)
        : std::runtime_error("unsupported wav format: " + field + " " + detail),
          field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct SignalTooShort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Decode a RIFF/WAVE container holding 16-bit signed little-endian mono PCM.
/// Unknown chunks are skipped. Throws MalformedContainer or UnsupportedFormat.
AudioClip decode_wav(std::span<const std::uint8_t> bytes, std::string source_id = "");

/// Inverse of decode_wav up to the fixed scaling: samples are multiplied by
/// 32768, rounded to nearest and clamped to the 16-bit range, then written as
/// a canonical 44-byte-header WAV. Re-encoding a decoded clip reproduces the
/// original PCM payload byte for byte.
std::vector<std::uint8_t> encode_wav(const AudioClip& clip);

/// Cut a clip into frames of frame_len samples every hop samples. Frame i
/// covers [i*hop, i*hop + frame_len); trailing samples that do not fill a
/// frame are dropped. Throws SignalTooShort when the clip has fewer than
/// frame_len samples.
FrameSequence frame_signal(const AudioClip& clip, std::size_t frame_len, std::size_t hop);

AudioClip load_wav_file(const std::string& path);
void write_wav_file(const std::string& path, const AudioClip& clip);

}  // namespace birdsong
