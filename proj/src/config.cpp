#include "birdsong/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace birdsong {
namespace {

using nlohmann::json;

[[noreturn]] void unknown_key(const std::string& section, const std::string& key) {
    throw std::invalid_argument("config: unknown key " +
                                (section.empty() ? key : section + "." + key));
}

void read_mfcc(const json& j, PipelineConfig::Mfcc& m) {
    for (const auto& [key, value] : j.items()) {
        if (key == "frame_len") {
            value.get_to(m.frame_len);
        } else if (key == "hop") {
            value.get_to(m.hop);
        } else if (key == "fft_size") {
            value.get_to(m.fft_size);
        } else if (key == "n_filters") {
            value.get_to(m.n_filters);
        } else if (key == "f_min") {
            value.get_to(m.f_min);
        } else if (key == "f_max") {
            value.get_to(m.f_max);
        } else if (key == "pre_emphasis") {
            value.get_to(m.pre_emphasis);
        } else if (key == "include_energy_coeff") {
            value.get_to(m.include_energy_coeff);
        } else {
            unknown_key("mfcc", key);
        }
    }
}

void read_smote(const json& j, PipelineConfig::Smote& s) {
    for (const auto& [key, value] : j.items()) {
        if (key == "k_neighbors") {
            value.get_to(s.k_neighbors);
        } else if (key == "replicates") {
            value.get_to(s.replicates);
        } else if (key == "base_seed") {
            value.get_to(s.base_seed);
        } else {
            unknown_key("smote", key);
        }
    }
}

void read_sweep(const json& j, PipelineConfig::Sweep& s) {
    for (const auto& [key, value] : j.items()) {
        if (key == "grid_size") {
            value.get_to(s.grid_size);
        } else if (key == "beta_max") {
            value.get_to(s.beta_max);
        } else if (key == "holdout_reference") {
            value.get_to(s.holdout_reference);
        } else {
            unknown_key("sweep", key);
        }
    }
}

void read_c45(const json& j, PipelineConfig::C45& c) {
    for (const auto& [key, value] : j.items()) {
        if (key == "min_leaf") {
            value.get_to(c.min_leaf);
        } else if (key == "prune_cf") {
            value.get_to(c.prune_cf);
        } else {
            unknown_key("c45", key);
        }
    }
}

void read_forest(const json& j, PipelineConfig::Forest& f) {
    for (const auto& [key, value] : j.items()) {
        if (key == "n_trees") {
            value.get_to(f.n_trees);
        } else if (key == "features_per_split") {
            value.get_to(f.features_per_split);
        } else {
            unknown_key("forest", key);
        }
    }
}

void read_mlp(const json& j, PipelineConfig::Mlp& m) {
    for (const auto& [key, value] : j.items()) {
        if (key == "hidden") {
            value.get_to(m.hidden);
        } else if (key == "learning_rate") {
            value.get_to(m.learning_rate);
        } else if (key == "momentum") {
            value.get_to(m.momentum);
        } else if (key == "epochs") {
            value.get_to(m.epochs);
        } else if (key == "loss") {
            value.get_to(m.loss);
        } else {
            unknown_key("mlp", key);
        }
    }
}

void read_experiment(const json& j, PipelineConfig::Experiment& e) {
    for (const auto& [key, value] : j.items()) {
        if (key == "repeats") {
            value.get_to(e.repeats);
        } else if (key == "base_seed") {
            value.get_to(e.base_seed);
        } else if (key == "smote_inside_folds") {
            value.get_to(e.smote_inside_folds);
        } else {
            unknown_key("experiment", key);
        }
    }
}

void read_fixtures(const json& j, PipelineConfig::Fixtures& f) {
    for (const auto& [key, value] : j.items()) {
        if (key == "seed") {
            value.get_to(f.seed);
        } else {
            unknown_key("fixtures", key);
        }
    }
}

void check(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(std::string("config: ") + message);
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

nlohmann::json config_to_json(const PipelineConfig& cfg) {
    return json{
        {"mfcc",
         {{"frame_len", cfg.mfcc.frame_len},
          {"hop", cfg.mfcc.hop},
          {"fft_size", cfg.mfcc.fft_size},
          {"n_filters", cfg.mfcc.n_filters},
          {"f_min", cfg.mfcc.f_min},
          {"f_max", cfg.mfcc.f_max},
          {"pre_emphasis", cfg.mfcc.pre_emphasis},
          {"include_energy_coeff", cfg.mfcc.include_energy_coeff}}},
        {"smote",
         {{"k_neighbors", cfg.smote.k_neighbors},
          {"replicates", cfg.smote.replicates},
          {"base_seed", cfg.smote.base_seed}}},
        {"sweep",
         {{"grid_size", cfg.sweep.grid_size},
          {"beta_max", cfg.sweep.beta_max},
          {"holdout_reference", cfg.sweep.holdout_reference}}},
        {"c45", {{"min_leaf", cfg.c45.min_leaf}, {"prune_cf", cfg.c45.prune_cf}}},
        {"forest",
         {{"n_trees", cfg.forest.n_trees}, {"features_per_split", cfg.forest.features_per_split}}},
        {"mlp",
         {{"hidden", cfg.mlp.hidden},
          {"learning_rate", cfg.mlp.learning_rate},
          {"momentum", cfg.mlp.momentum},
          {"epochs", cfg.mlp.epochs},
          {"loss", cfg.mlp.loss}}},
        {"experiment",
         {{"repeats", cfg.experiment.repeats},
          {"base_seed", cfg.experiment.base_seed},
          {"smote_inside_folds", cfg.experiment.smote_inside_folds}}},
        {"fixtures", {{"seed", cfg.fixtures.seed}}},
        {"jobs", cfg.jobs},
    };
}

PipelineConfig config_from_json(const nlohmann::json& j) {
    PipelineConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "mfcc") {
            read_mfcc(value, cfg.mfcc);
        } else if (key == "smote") {
            read_smote(value, cfg.smote);
        } else if (key == "sweep") {
            read_sweep(value, cfg.sweep);
        } else if (key == "c45") {
            read_c45(value, cfg.c45);
        } else if (key == "forest") {
            read_forest(value, cfg.forest);
        } else if (key == "mlp") {
            read_mlp(value, cfg.mlp);
        } else if (key == "experiment") {
            read_experiment(value, cfg.experiment);
        } else if (key == "fixtures") {
            read_fixtures(value, cfg.fixtures);
        } else if (key == "jobs") {
            value.get_to(cfg.jobs);
        } else {
            unknown_key("", key);
        }
    }
    validate_config(cfg);
    return cfg;
}

PipelineConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return config_from_json(doc);
}

void save_config_file(const std::string& path, const PipelineConfig& cfg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << config_to_json(cfg).dump(2) << "\n";
    if (!out.flush()) throw std::runtime_error("failed writing " + path);
}

void validate_config(const PipelineConfig& cfg) {
    check(cfg.mfcc.frame_len > 0, "mfcc.frame_len must be positive");
    check(cfg.mfcc.hop > 0, "mfcc.hop must be positive");
    check(cfg.mfcc.fft_size >= cfg.mfcc.frame_len, "mfcc.fft_size must be >= mfcc.frame_len");
    check((cfg.mfcc.fft_size & (cfg.mfcc.fft_size - 1)) == 0,
          "mfcc.fft_size must be a power of two");
    check(cfg.mfcc.n_filters > 0, "mfcc.n_filters must be positive");
    check(std::isfinite(cfg.mfcc.f_min) && cfg.mfcc.f_min >= 0, "mfcc.f_min must be >= 0");
    check(std::isfinite(cfg.mfcc.f_max) && cfg.mfcc.f_max >= 0, "mfcc.f_max must be >= 0");
    check(std::isfinite(cfg.mfcc.pre_emphasis) && cfg.mfcc.pre_emphasis >= 0.0 &&
              cfg.mfcc.pre_emphasis < 1.0,
          "mfcc.pre_emphasis must lie in [0, 1)");
    check(cfg.smote.k_neighbors > 0, "smote.k_neighbors must be positive");
    check(cfg.smote.replicates > 0, "smote.replicates must be positive");
    check(cfg.sweep.grid_size > 0, "sweep.grid_size must be positive");
    check(std::isfinite(cfg.sweep.beta_max) && cfg.sweep.beta_max >= 0,
          "sweep.beta_max must be >= 0");
    check(cfg.c45.min_leaf > 0, "c45.min_leaf must be positive");
    check(std::isfinite(cfg.c45.prune_cf) && cfg.c45.prune_cf > 0.0 && cfg.c45.prune_cf < 1.0,
          "c45.prune_cf must lie in (0, 1)");
    check(cfg.forest.n_trees > 0, "forest.n_trees must be positive");
    check(cfg.forest.features_per_split > 0 && cfg.forest.features_per_split <= 20,
          "forest.features_per_split must lie in [1, 20]");
    check(cfg.mlp.hidden > 0, "mlp.hidden must be positive");
    check(std::isfinite(cfg.mlp.learning_rate) && cfg.mlp.learning_rate > 0,
          "mlp.learning_rate must be > 0");
    check(std::isfinite(cfg.mlp.momentum) && cfg.mlp.momentum >= 0 && cfg.mlp.momentum < 1,
          "mlp.momentum must lie in [0, 1)");
    check(cfg.mlp.epochs > 0, "mlp.epochs must be positive");
    check(cfg.mlp.loss == "squared_error" || cfg.mlp.loss == "cross_entropy",
          "mlp.loss must be squared_error or cross_entropy");
    check(cfg.experiment.repeats > 0, "experiment.repeats must be positive");
    check(cfg.jobs > 0, "jobs must be positive");
}

std::string config_reference_markdown() {
    const PipelineConfig d;
    struct Row {
        std::string key;
        std::string def;
        std::string meaning;
    };
    const Row rows[] = {
        {"mfcc.frame_len", std::to_string(d.mfcc.frame_len), "Analysis frame length in samples."},
        {"mfcc.hop", std::to_string(d.mfcc.hop), "Hop between frame starts in samples."},
        {"mfcc.fft_size", std::to_string(d.mfcc.fft_size),
         "FFT length (power of two, >= frame_len); frames are zero-padded to it."},
        {"mfcc.n_filters", std::to_string(d.mfcc.n_filters),
         "Number of triangular mel filters."},
        {"mfcc.f_min", fmt_double(d.mfcc.f_min), "Lower edge of the filterbank in Hz."},
        {"mfcc.f_max", fmt_double(d.mfcc.f_max),
         "Upper edge of the filterbank in Hz; 0 selects the Nyquist frequency."},
        {"mfcc.pre_emphasis", fmt_double(d.mfcc.pre_emphasis),
         "Pre-emphasis coefficient applied as x[t] - c*x[t-1]."},
        {"mfcc.include_energy_coeff", d.mfcc.include_energy_coeff ? "true" : "false",
         "Keep the DCT energy term (index 0) instead of starting at index 1."},
        {"smote.k_neighbors", std::to_string(d.smote.k_neighbors),
         "Minority neighbors considered per synthetic example."},
        {"smote.replicates", std::to_string(d.smote.replicates),
         "Number of extended balanced datasets to generate."},
        {"smote.base_seed", std::to_string(d.smote.base_seed),
         "Replicate r draws from seed base_seed + r."},
        {"sweep.grid_size", std::to_string(d.sweep.grid_size),
         "Number of beta thresholds on the sweep grid."},
        {"sweep.beta_max", fmt_double(d.sweep.beta_max),
         "Top of the beta grid; 0 selects 1.1x the largest observed distance."},
        {"sweep.holdout_reference", d.sweep.holdout_reference ? "true" : "false",
         "Score each MGB example against a reference built without it."},
        {"c45.min_leaf", std::to_string(d.c45.min_leaf),
         "Nodes with fewer than 2*min_leaf examples become leaves."},
        {"c45.prune_cf", fmt_double(d.c45.prune_cf),
         "Pessimistic-pruning confidence factor; smaller prunes harder."},
        {"forest.n_trees", std::to_string(d.forest.n_trees), "Trees in the forest."},
        {"forest.features_per_split", std::to_string(d.forest.features_per_split),
         "Attributes drawn per node (floor(log2(20)+1) by default)."},
        {"mlp.hidden", std::to_string(d.mlp.hidden), "Hidden layer width."},
        {"mlp.learning_rate", fmt_double(d.mlp.learning_rate), "SGD learning rate."},
        {"mlp.momentum", fmt_double(d.mlp.momentum), "SGD momentum term."},
        {"mlp.epochs", std::to_string(d.mlp.epochs), "Training epochs."},
        {"mlp.loss", d.mlp.loss, "squared_error or cross_entropy."},
        {"experiment.repeats", std::to_string(d.experiment.repeats),
         "LOOCV repetitions for stochastic techniques (and all Extended runs)."},
        {"experiment.base_seed", std::to_string(d.experiment.base_seed),
         "Run r uses seed base_seed + r."},
        {"experiment.smote_inside_folds", d.experiment.smote_inside_folds ? "true" : "false",
         "Regenerate synthetics from each fold's training split instead of up front."},
        {"fixtures.seed", std::to_string(d.fixtures.seed), "Seed for the synthetic corpus."},
        {"jobs", std::to_string(d.jobs),
         "Worker threads; never changes output bytes, only wall time."},
    };

    std::string md =
        "# Configuration reference\n\n"
        "All keys are optional in the config file; absent keys keep the defaults below.\n"
        "Subcommand flags override file values for one invocation.\n\n"
        "| Key | Default | Meaning |\n| --- | --- | --- |\n";
    for (const Row& r : rows) {
        md += "| " + r.key + " | " + r.def + " | " + r.meaning + " |\n";
    }
    return md;
}

}  // namespace birdsong
