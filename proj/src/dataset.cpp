#include "birdsong/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace birdsong {

LabeledDataset LabeledDataset::from_examples(std::vector<Fingerprint> examples, std::string name) {
    LabeledDataset d;
    d.name_ = std::move(name);
    d.examples_.reserve(examples.size());
    for (auto& fp : examples) d.append(std::move(fp));
    return d;
}

void LabeledDataset::append(Fingerprint fp) {
    if (!fp.label)
        throw std::invalid_argument("unlabeled fingerprint '" + fp.source_id +
                                    "' cannot join a labeled dataset");
    (*fp.label == Label::Mgb ? n_mgb_ : n_other_)++;
    examples_.push_back(std::move(fp));
}

std::string format_real9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

static std::string csv_header() {
    std::string h = "source_id,label";
    for (std::size_t j = 0; j < kNumCoeffs; ++j) h += "," + coeff_name(j);
    return h;
}

std::string fingerprint_csv(const std::vector<Fingerprint>& fps) {
    std::string out = csv_header() + "\n";
    for (const auto& fp : fps) {
        if (fp.source_id.find(',') != std::string::npos ||
            fp.source_id.find('\n') != std::string::npos)
            throw std::invalid_argument("source_id may not contain ',' or newline: " +
                                        fp.source_id);
        out += fp.source_id;
        out += ',';
        if (fp.label) out += label_name(*fp.label);
        for (double c : fp.coeffs) {
            if (!std::isfinite(c))
                throw std::invalid_argument("non-finite coefficient in " + fp.source_id);
            out += ',';
            out += format_real9(c);
        }
        out += '\n';
    }
    return out;
}

void write_fingerprint_csv(const std::string& path, const std::vector<Fingerprint>& fps) {
    std::ofstream f(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << fingerprint_csv(fps);
    if (!f) throw std::runtime_error("write failed: " + path);
}

static std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::vector<Fingerprint> parse_fingerprint_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("fingerprint CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != csv_header())
        throw std::runtime_error("bad fingerprint CSV header: '" + line + "'");

    std::vector<Fingerprint> fps;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 2 + kNumCoeffs)
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                                     std::to_string(2 + kNumCoeffs) + " fields, got " +
                                     std::to_string(fields.size()));
        Fingerprint fp;
        fp.source_id = fields[0];
        if (!fields[1].empty()) fp.label = parse_label(fields[1]);
        for (std::size_t j = 0; j < kNumCoeffs; ++j) {
            try {
                std::size_t used = 0;
                fp.coeffs[j] = std::stod(fields[2 + j], &used);
                if (used != fields[2 + j].size()) throw std::invalid_argument("trailing junk");
            } catch (const std::exception&) {
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad real in " +
                                         coeff_name(j) + ": '" + fields[2 + j] + "'");
            }
        }
        fps.push_back(std::move(fp));
    }
    return fps;
}

std::vector<Fingerprint> read_fingerprint_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_fingerprint_csv(ss.str());
}

LabeledDataset load_labeled_csv(const std::string& path, std::string name) {
    auto fps = read_fingerprint_csv(path);
    for (const auto& fp : fps)
        if (!fp.label)
            throw std::runtime_error(path + ": row '" + fp.source_id + "' has no class label");
    return LabeledDataset::from_examples(std::move(fps), name.empty() ? path : std::move(name));
}

}  // namespace birdsong
