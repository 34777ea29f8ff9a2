#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace birdsong {

/// All pipeline knobs with their defaults. Serializes to a single JSON
/// document; parsing accepts partial documents (absent keys keep their
/// defaults) and rejects unknown keys.
struct PipelineConfig {
    struct Mfcc {
        std::size_t frame_len = 1024;
        std::size_t hop = 512;
        std::size_t fft_size = 1024;
        std::size_t n_filters = 40;
        double f_min = 0.0;
        double f_max = 0.0;  // 0 means the Nyquist frequency
        double pre_emphasis = 0.97;
        bool include_energy_coeff = false;

        bool operator==(const Mfcc&) const = default;
    } mfcc;

    struct Smote {
        std::size_t k_neighbors = 5;
        std::size_t replicates = 100;
        std::uint64_t base_seed = 42;

        bool operator==(const Smote&) const = default;
    } smote;

    struct Sweep {
        std::size_t grid_size = 200;
        double beta_max = 0.0;  // 0 means 1.1 * the largest observed distance
        bool holdout_reference = false;

        bool operator==(const Sweep&) const = default;
    } sweep;

    struct C45 {
        std::size_t min_leaf = 2;
        double prune_cf = 0.25;

        bool operator==(const C45&) const = default;
    } c45;

    struct Forest {
        std::size_t n_trees = 100;
        std::size_t features_per_split = 5;

        bool operator==(const Forest&) const = default;
    } forest;

    struct Mlp {
        std::size_t hidden = 11;
        double learning_rate = 0.3;
        double momentum = 0.2;
        std::size_t epochs = 500;
        std::string loss = "squared_error";  // or "cross_entropy"

        bool operator==(const Mlp&) const = default;
    } mlp;

    struct Experiment {
        std::size_t repeats = 100;
        std::uint64_t base_seed = 42;
        bool smote_inside_folds = false;

        bool operator==(const Experiment&) const = default;
    } experiment;

    struct Fixtures {
        std::uint64_t seed = 42;

        bool operator==(const Fixtures&) const = default;
    } fixtures;

    int jobs = 1;

    bool operator==(const PipelineConfig&) const = default;
};

nlohmann::json config_to_json(const PipelineConfig& cfg);
PipelineConfig config_from_json(const nlohmann::json& j);

PipelineConfig load_config_file(const std::string& path);
void save_config_file(const std::string& path, const PipelineConfig& cfg);

/// Validates ranges (counts positive, rates finite, ...); throws
/// std::invalid_argument naming the offending key.
void validate_config(const PipelineConfig& cfg);

/// Markdown table of every key, its default and its meaning.
std::string config_reference_markdown();

}  // namespace birdsong
