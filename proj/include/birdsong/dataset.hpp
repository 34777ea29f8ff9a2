#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "birdsong/types.hpp"

namespace birdsong {

struct SingleClassDataset : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyDataset : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ordered collection of labeled fingerprints.
class LabeledDataset {
public:
    LabeledDataset() = default;

    /// Every example must carry a label.
    static LabeledDataset from_examples(std::vector<Fingerprint> examples, std::string name);

    const std::vector<Fingerprint>& examples() const { return examples_; }
    const std::string& name() const { return name_; }
    std::size_t size() const { return examples_.size(); }

    std::size_t count(Label l) const { return l == Label::Mgb ? n_mgb_ : n_other_; }
    bool has_both_classes() const { return n_mgb_ > 0 && n_other_ > 0; }

    void append(Fingerprint fp);
    void set_name(std::string name) { name_ = std::move(name); }

    bool operator==(const LabeledDataset&) const = default;

private:
    std::vector<Fingerprint> examples_;
    std::string name_;
    std::size_t n_mgb_ = 0;
    std::size_t n_other_ = 0;
};

/// Serialize a real with 9 significant digits (the fingerprint CSV contract).
std::string format_real9(double v);

/// Fingerprint CSV: header `source_id,label,C01,...,C20`, label MGB, Other or
/// empty, reals at 9 significant digits, LF line endings.
std::string fingerprint_csv(const std::vector<Fingerprint>& fps);
void write_fingerprint_csv(const std::string& path, const std::vector<Fingerprint>& fps);

/// Parse the fingerprint CSV format. Throws std::runtime_error naming the
/// offending line on malformed input.
std::vector<Fingerprint> parse_fingerprint_csv(const std::string& text);
std::vector<Fingerprint> read_fingerprint_csv(const std::string& path);

/// Read a fingerprint CSV and require every row to be labeled.
LabeledDataset load_labeled_csv(const std::string& path, std::string name = "");

}  // namespace birdsong
