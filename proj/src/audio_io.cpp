#include "birdsong/audio_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace birdsong {

namespace {

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t off) {
    return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t off) {
    return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
           (static_cast<std::uint32_t>(b[off + 2]) << 16) |
           (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t off, const char* tag) {
    return std::memcmp(b.data() + off, tag, 4) == 0;
}

void append_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

}  // namespace

AudioClip decode_wav(std::span<const std::uint8_t> bytes, std::string source_id) {
    if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF"))
        throw MalformedContainer("not a RIFF container");
    if (!tag_is(bytes, 8, "WAVE")) throw MalformedContainer("RIFF form type is not WAVE");

    bool have_fmt = false;
    std::uint16_t audio_format = 0, channels = 0, bits_per_sample = 0;
    std::uint32_t sample_rate = 0;
    std::span<const std::uint8_t> data;
    bool have_data = false;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        std::uint32_t chunk_size = read_u32(bytes, pos + 4);
        std::size_t body = pos + 8;
        if (body + chunk_size > bytes.size())
            throw MalformedContainer("truncated chunk at offset " + std::to_string(pos));
        if (tag_is(bytes, pos, "fmt ")) {
            if (chunk_size < 16) throw MalformedContainer("fmt chunk too small");
            audio_format = read_u16(bytes, body);
            channels = read_u16(bytes, body + 2);
            sample_rate = read_u32(bytes, body + 4);
            bits_per_sample = read_u16(bytes, body + 14);
            have_fmt = true;
        } else if (tag_is(bytes, pos, "data")) {
            data = bytes.subspan(body, chunk_size);
            have_data = true;
        }
        pos = body + chunk_size + (chunk_size & 1);  // RIFF chunks are word-aligned
    }
    if (pos != bytes.size()) throw MalformedContainer("trailing garbage after last chunk");
    if (!have_fmt) throw MalformedContainer("missing fmt chunk");
    if (!have_data) throw MalformedContainer("missing data chunk");

    if (audio_format != 1)
        throw UnsupportedFormat("format", "(code " + std::to_string(audio_format) + ", want PCM)");
    if (channels != 1)
        throw UnsupportedFormat("channels", "(" + std::to_string(channels) + ", want mono)");
    if (bits_per_sample != 16)
        throw UnsupportedFormat("bits_per_sample",
                                "(" + std::to_string(bits_per_sample) + ", want 16)");
    if (sample_rate == 0) throw MalformedContainer("sample rate is zero");
    if (data.size() % 2 != 0) throw MalformedContainer("odd data chunk size for 16-bit samples");
    if (data.empty()) throw MalformedContainer("empty data chunk");

    AudioClip clip;
    clip.sample_rate = sample_rate;
    clip.source_id = std::move(source_id);
    clip.samples.reserve(data.size() / 2);
    for (std::size_t i = 0; i < data.size(); i += 2) {
        auto s = static_cast<std::int16_t>(read_u16(data, i));
        clip.samples.push_back(static_cast<double>(s) / 32768.0);
    }
    return clip;
}

std::vector<std::uint8_t> encode_wav(const AudioClip& clip) {
    const std::uint32_t n = static_cast<std::uint32_t>(clip.samples.size());
    const std::uint32_t data_size = n * 2;
    std::vector<std::uint8_t> out;
    out.reserve(44 + data_size);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    append_u32(out, 36 + data_size);
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), {'f', 'm', 't', ' '});
    append_u32(out, 16);
    append_u16(out, 1);  // PCM
    append_u16(out, 1);  // mono
    append_u32(out, clip.sample_rate);
    append_u32(out, clip.sample_rate * 2);  // byte rate
    append_u16(out, 2);                     // block align
    append_u16(out, 16);
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    append_u32(out, data_size);
    for (double s : clip.samples) {
        double scaled = std::round(s * 32768.0);
        if (scaled > 32767.0) scaled = 32767.0;
        if (scaled < -32768.0) scaled = -32768.0;
        append_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
    }
    return out;
}

FrameSequence frame_signal(const AudioClip& clip, std::size_t frame_len, std::size_t hop) {
    if (frame_len == 0) throw std::invalid_argument("frame_len must be positive");
    if (hop == 0 || hop > frame_len)
        throw std::invalid_argument("hop must satisfy 0 < hop <= frame_len");
    if (clip.samples.size() < frame_len)
        throw SignalTooShort("signal has " + std::to_string(clip.samples.size()) +
                             " samples, need at least " + std::to_string(frame_len));

    FrameSequence seq;
    seq.frame_len = frame_len;
    seq.hop = hop;
    seq.sample_rate = clip.sample_rate;
    std::size_t count = (clip.samples.size() - frame_len) / hop + 1;
    seq.frames.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        auto start = clip.samples.begin() + static_cast<std::ptrdiff_t>(i * hop);
        seq.frames.emplace_back(start, start + static_cast<std::ptrdiff_t>(frame_len));
    }
    return seq;
}

AudioClip load_wav_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return decode_wav(bytes, path);
}

void write_wav_file(const std::string& path, const AudioClip& clip) {
    auto bytes = encode_wav(clip);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace birdsong
