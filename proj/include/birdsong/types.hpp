#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace birdsong {

/// Binary class labels. Mgb is the positive (target species) class.
enum class Label { Mgb, Other };

inline const char* label_name(Label l) { return l == Label::Mgb ? "MGB" : "Other"; }

inline Label parse_label(const std::string& s) {
    if (s == "MGB") return Label::Mgb;
    if (s == "Other") return Label::Other;
    throw std::invalid_argument("unknown class label: '" + s + "'");
}

/// Number of cepstral coefficients in a song fingerprint.
inline constexpr std::size_t kNumCoeffs = 20;

/// Attribute name for coefficient index j (0-based): "C01".."C20".
inline std::string coeff_name(std::size_t j) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "C%02zu", j + 1);
    return buf;
}

/// A song reduced to its 20 time-averaged cepstral coefficients.
struct Fingerprint {
    std::array<double, kNumCoeffs> coeffs{};
    std::optional<Label> label;
    std::string source_id;

    bool operator==(const Fingerprint&) const = default;
};

struct EmptyInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace birdsong
