#include <iostream>
#include <string_view>

#include <CLI11.hpp>

#include "birdsong/commands.hpp"

namespace {

/// The config file must be applied before CLI11 binds flag defaults, so the
/// path is pulled out of argv in a first pass.
std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string_view a = argv[i];
        if (a == "--config" && i + 1 < argc) return argv[i + 1];
        if (a.rfind("--config=", 0) == 0) return std::string(a.substr(9));
    }
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    using namespace birdsong;

    PipelineConfig cfg;
    const std::string config_path = find_config_path(argc, argv);
    if (!config_path.empty()) {
        try {
            cfg = load_config_file(config_path);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }

    CLI::App app{"Bird-song fingerprint pipeline: MFCC extraction, SMOTE, DTW threshold "
                 "sweep and classifier experiments"};
    app.require_subcommand(0, 1);

    std::string config_dummy;
    app.add_option("--config", config_dummy, "JSON config file; flags below override its values")
        ->type_name("FILE");
    bool show_reference = false;
    app.add_flag("--config-reference", show_reference,
                 "print the configuration reference as markdown and exit");
    app.add_option("--jobs", cfg.jobs, "worker threads; outputs are identical for any value")
        ->capture_default_str();

    ExtractArgs ea;
    CLI::App* extract = app.add_subcommand("extract", "decode WAVs into a fingerprint CSV");
    extract->add_option("input_dir", ea.input_dir, "directory scanned recursively for .wav files")
        ->required();
    extract->add_option("-o,--output", ea.output, "fingerprint CSV to write")->required();
    extract->add_option("--labels", ea.labels,
                        "label map CSV (name,label per line; default <input_dir>/labels.csv)");
    extract->add_option("--frame-len", cfg.mfcc.frame_len, "frame length in samples")
        ->capture_default_str();
    extract->add_option("--hop", cfg.mfcc.hop, "hop size in samples")->capture_default_str();
    extract->add_option("--fft-size", cfg.mfcc.fft_size, "FFT length (power of two)")
        ->capture_default_str();
    extract->add_option("--n-filters", cfg.mfcc.n_filters, "mel filter count")
        ->capture_default_str();
    extract->add_option("--f-min", cfg.mfcc.f_min, "filterbank lower edge in Hz")
        ->capture_default_str();
    extract->add_option("--f-max", cfg.mfcc.f_max, "filterbank upper edge in Hz (0 = Nyquist)")
        ->capture_default_str();
    extract->add_option("--pre-emphasis", cfg.mfcc.pre_emphasis, "pre-emphasis coefficient")
        ->capture_default_str();
    extract->add_flag("--include-energy-coeff", cfg.mfcc.include_energy_coeff,
                      "keep the DCT energy term instead of starting at index 1");

    SmoteArgs sa;
    CLI::App* smote = app.add_subcommand("smote", "write extended balanced datasets");
    smote->add_option("input", sa.input, "labeled fingerprint CSV")->required();
    smote->add_option("-o,--output-dir", sa.output_dir, "directory for extended_NNN.csv files")
        ->required();
    smote->add_option("--k", cfg.smote.k_neighbors, "minority neighbors per synthetic")
        ->capture_default_str();
    smote->add_option("--replicates", cfg.smote.replicates, "number of extended datasets")
        ->capture_default_str();
    smote->add_option("--seed", cfg.smote.base_seed, "replicate r uses seed base_seed + r")
        ->capture_default_str();

    SweepArgs wa;
    CLI::App* sweep = app.add_subcommand("sweep", "DTW distance threshold sweep");
    sweep->add_option("input", wa.input, "labeled fingerprint CSV")->required();
    sweep->add_option("--output-csv", wa.output_csv, "per-threshold rate curves")
        ->capture_default_str();
    sweep->add_option("--output-json", wa.output_json, "sweep summary")->capture_default_str();
    sweep->add_option("--grid", cfg.sweep.grid_size, "number of thresholds")
        ->capture_default_str();
    sweep->add_option("--beta-max", cfg.sweep.beta_max,
                      "top of the grid (0 = 1.1x the largest observed distance)")
        ->capture_default_str();
    sweep->add_flag("--holdout-reference", cfg.sweep.holdout_reference,
                    "score each MGB example against a reference built without it");

    ExperimentArgs xa;
    CLI::App* experiment =
        app.add_subcommand("experiment", "repeated LOOCV classification experiment");
    experiment->add_option("input", xa.input, "labeled fingerprint CSV")->required();
    experiment->add_option("-t,--technique", xa.technique, "one of: c45, rf, nb, mlp")
        ->required();
    experiment->add_option("-k,--kind", xa.kind, "simple or extended")->capture_default_str();
    experiment->add_option("--output-csv", xa.output_csv, "summary rate table")
        ->capture_default_str();
    experiment->add_option("--output-json", xa.output_json, "full report with per-run rates")
        ->capture_default_str();
    experiment->add_option("--repeats", cfg.experiment.repeats,
                           "runs for stochastic techniques and Extended kind")
        ->capture_default_str();
    experiment->add_option("--seed", cfg.experiment.base_seed, "run r uses seed base_seed + r")
        ->capture_default_str();
    experiment->add_flag("--smote-inside-folds", cfg.experiment.smote_inside_folds,
                         "regenerate synthetics from each fold's training split");
    experiment->add_option("--smote-k", cfg.smote.k_neighbors,
                           "SMOTE neighbors for Extended kind")
        ->capture_default_str();
    experiment->add_option("--c45-min-leaf", cfg.c45.min_leaf, "C4.5 minimum leaf size")
        ->capture_default_str();
    experiment->add_option("--c45-prune-cf", cfg.c45.prune_cf, "C4.5 pruning confidence")
        ->capture_default_str();
    experiment->add_option("--rf-trees", cfg.forest.n_trees, "forest size")
        ->capture_default_str();
    experiment->add_option("--rf-features", cfg.forest.features_per_split,
                           "attributes drawn per node")
        ->capture_default_str();
    experiment->add_option("--mlp-hidden", cfg.mlp.hidden, "hidden layer width")
        ->capture_default_str();
    experiment->add_option("--mlp-lr", cfg.mlp.learning_rate, "learning rate")
        ->capture_default_str();
    experiment->add_option("--mlp-momentum", cfg.mlp.momentum, "momentum term")
        ->capture_default_str();
    experiment->add_option("--mlp-epochs", cfg.mlp.epochs, "training epochs")
        ->capture_default_str();
    experiment->add_option("--mlp-loss", cfg.mlp.loss, "squared_error or cross_entropy")
        ->capture_default_str();
    experiment->add_option("--save-model", xa.save_model,
                           "train on the full dataset and save the model JSON here");
    experiment->add_option("--dump-tree", xa.dump_tree,
                           "write the C4.5 tree readout here (c45 only)");

    FixturesArgs fa;
    CLI::App* fixtures = app.add_subcommand("fixtures", "generate the synthetic WAV corpus");
    fixtures->add_option("output_dir", fa.output_dir, "directory for the 24 clips + labels.csv")
        ->required();
    fixtures->add_option("--seed", cfg.fixtures.seed, "corpus seed")->capture_default_str();

    ReportArgs ra;
    CLI::App* report = app.add_subcommand("report", "merge experiment JSONs into one table");
    report->add_option("inputs", ra.inputs, "experiment JSON reports")->required();
    report->add_option("-o,--output", ra.output, "merged CSV")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (show_reference) {
        std::cout << config_reference_markdown();
        return kExitOk;
    }

    try {
        validate_config(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (extract->parsed()) return cmd_extract(ea, cfg);
    if (smote->parsed()) return cmd_smote(sa, cfg);
    if (sweep->parsed()) return cmd_sweep(wa, cfg);
    if (experiment->parsed()) return cmd_experiment(xa, cfg);
    if (fixtures->parsed()) return cmd_fixtures(fa, cfg);
    if (report->parsed()) return cmd_report(ra, cfg);

    std::cerr << app.help();
    return kExitUsage;
}
