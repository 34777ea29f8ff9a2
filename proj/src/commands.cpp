#include "birdsong/commands.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "birdsong/classifiers.hpp"
#include "birdsong/dtw.hpp"
#include "birdsong/features.hpp"
#include "birdsong/fixtures.hpp"
#include "birdsong/model_io.hpp"
#include "birdsong/sampling.hpp"

namespace birdsong {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out.flush()) throw std::runtime_error("failed writing " + path);
}

std::string format_rate2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

/// name,label rows; blank lines skipped, CR tolerated.
std::map<std::string, Label> read_label_map(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open label map " + path);
    std::map<std::string, Label> map;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.rfind(',');
        if (comma == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected name,label");
        }
        try {
            map[line.substr(0, comma)] = parse_label(line.substr(comma + 1));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return map;
}

std::optional<Label> lookup_label(const std::map<std::string, Label>& map, const fs::path& rel) {
    if (auto it = map.find(rel.generic_string()); it != map.end()) return it->second;
    if (auto it = map.find(rel.filename().string()); it != map.end()) return it->second;
    if (rel.has_parent_path()) {
        if (auto it = map.find(rel.parent_path().filename().string()); it != map.end()) {
            return it->second;
        }
    }
    return std::nullopt;
}

std::vector<double> uniform_grid(double hi, std::size_t points) {
    std::vector<double> grid(points);
    if (points == 1) {
        grid[0] = hi;
        return grid;
    }
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = hi * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return grid;
}

ClassifierSettings settings_from_config(const PipelineConfig& cfg) {
    ClassifierSettings s;
    s.c45.min_leaf = cfg.c45.min_leaf;
    s.c45.prune_cf = cfg.c45.prune_cf;
    s.forest.n_trees = cfg.forest.n_trees;
    s.forest.features_per_split = cfg.forest.features_per_split;
    s.mlp.hidden = cfg.mlp.hidden;
    s.mlp.learning_rate = cfg.mlp.learning_rate;
    s.mlp.momentum = cfg.mlp.momentum;
    s.mlp.epochs = cfg.mlp.epochs;
    s.mlp.loss = cfg.mlp.loss == "cross_entropy" ? MlpLoss::CrossEntropy : MlpLoss::SquaredError;
    return s;
}

json stats_to_json(const RateStats& s) {
    json j{{"mean", s.mean}};
    if (s.std_dev) j["std"] = *s.std_dev;
    return j;
}

std::string stat_cell(const json& stats) {
    std::string cell = format_rate2(stats.at("mean").get<double>());
    if (stats.contains("std")) cell += " +- " + format_rate2(stats.at("std").get<double>());
    return cell;
}

}  // namespace

int cmd_extract(const ExtractArgs& args, const PipelineConfig& cfg) {
    std::error_code ec;
    if (!fs::is_directory(args.input_dir, ec)) {
        std::cerr << "error: " << args.input_dir << " is not a readable directory\n";
        return kExitUsage;
    }

    std::vector<fs::path> wavs;
    try {
        for (const auto& entry : fs::recursive_directory_iterator(args.input_dir)) {
            if (!entry.is_regular_file()) continue;
            std::string ext = entry.path().extension().string();
            std::transform(ext.begin(), ext.end(), ext.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            if (ext == ".wav") wavs.push_back(entry.path());
        }
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::sort(wavs.begin(), wavs.end(), [&](const fs::path& a, const fs::path& b) {
        return fs::relative(a, args.input_dir).generic_string() <
               fs::relative(b, args.input_dir).generic_string();
    });
    if (wavs.empty()) {
        std::cerr << "warning: no .wav files under " << args.input_dir << "\n";
        try {
            write_fingerprint_csv(args.output, {});
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitComputation;
        }
        std::cout << "wrote 0 fingerprints to " << args.output << " (0 failed)\n";
        return kExitOk;
    }

    const std::string labels_path =
        args.labels.empty() ? (fs::path(args.input_dir) / "labels.csv").string() : args.labels;
    std::map<std::string, Label> label_map;
    try {
        label_map = read_label_map(labels_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::map<std::uint32_t, MelFilterbank> banks;
    MfccParams mfcc_params;
    mfcc_params.pre_emphasis = cfg.mfcc.pre_emphasis;
    mfcc_params.include_energy_coeff = cfg.mfcc.include_energy_coeff;

    std::vector<Fingerprint> rows;
    std::size_t failures = 0;
    for (const fs::path& p : wavs) {
        const std::string rel = fs::relative(p, args.input_dir).generic_string();
        try {
            const std::optional<Label> label = lookup_label(label_map, rel);
            if (!label) throw std::runtime_error("no label in " + labels_path);

            AudioClip clip = load_wav_file(p.string());
            if (clip.sample_rate != 44100) {
                std::cerr << "warning: " << rel << ": sample rate " << clip.sample_rate
                          << " Hz (corpus standard is 44100 Hz)\n";
            }
            auto bank = banks.find(clip.sample_rate);
            if (bank == banks.end()) {
                const double f_max =
                    cfg.mfcc.f_max > 0.0 ? cfg.mfcc.f_max : clip.sample_rate / 2.0;
                bank = banks
                           .emplace(clip.sample_rate,
                                    build_filterbank(clip.sample_rate, cfg.mfcc.fft_size,
                                                     cfg.mfcc.n_filters, cfg.mfcc.f_min, f_max))
                           .first;
            }
            const FrameSequence frames = frame_signal(clip, cfg.mfcc.frame_len, cfg.mfcc.hop);
            Fingerprint fp = mean_fingerprint(mfcc(frames, bank->second, mfcc_params), label);
            fp.source_id = rel;
            rows.push_back(std::move(fp));
        } catch (const std::exception& e) {
            std::cerr << "error: " << rel << ": " << e.what() << "\n";
            ++failures;
        }
    }

    try {
        write_fingerprint_csv(args.output, rows);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    std::cout << "wrote " << rows.size() << " fingerprints to " << args.output << " ("
              << failures << " failed)\n";
    return failures > 0 ? kExitPartial : kExitOk;
}

int cmd_smote(const SmoteArgs& args, const PipelineConfig& cfg) {
    LabeledDataset data;
    try {
        data = load_labeled_csv(args.input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!data.has_both_classes()) {
        const Label missing = data.count(Label::Mgb) == 0 ? Label::Mgb : Label::Other;
        std::cerr << "error: dataset has no " << label_name(missing) << " examples\n";
        return kExitUsage;
    }

    std::error_code ec;
    fs::create_directories(args.output_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create " << args.output_dir << ": " << ec.message() << "\n";
        return kExitUsage;
    }

    json manifest;
    manifest["k_neighbors"] = cfg.smote.k_neighbors;
    manifest["base_seed"] = cfg.smote.base_seed;
    manifest["replicates"] = cfg.smote.replicates;
    json files = json::array();
    try {
        for (std::size_t r = 0; r < cfg.smote.replicates; ++r) {
            const LabeledDataset ext =
                extended_replicate(data, r, cfg.smote.base_seed, cfg.smote.k_neighbors);
            char name[32];
            std::snprintf(name, sizeof(name), "extended_%03zu.csv", r);
            write_fingerprint_csv((fs::path(args.output_dir) / name).string(), ext.examples());
            files.push_back(json{{"file", name},
                                 {"seed", cfg.smote.base_seed + r},
                                 {"n_mgb", ext.count(Label::Mgb)},
                                 {"n_other", ext.count(Label::Other)}});
        }
    } catch (const TooFewMinority& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BadK& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    manifest["files"] = std::move(files);

    try {
        write_text_file((fs::path(args.output_dir) / "manifest.json").string(),
                        manifest.dump(2) + "\n");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    std::cout << "wrote " << cfg.smote.replicates << " extended datasets to " << args.output_dir
              << "\n";
    return kExitOk;
}

int cmd_sweep(const SweepArgs& args, const PipelineConfig& cfg) {
    LabeledDataset data;
    try {
        data = load_labeled_csv(args.input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!data.has_both_classes()) {
        const Label missing = data.count(Label::Mgb) == 0 ? Label::Mgb : Label::Other;
        std::cerr << "error: dataset has no " << label_name(missing) << " examples\n";
        return kExitUsage;
    }
    if (cfg.sweep.holdout_reference && data.count(Label::Mgb) < 2) {
        std::cerr << "error: --holdout-reference needs at least 2 MGB examples\n";
        return kExitUsage;
    }

    SweepReport report;
    try {
        std::vector<Fingerprint> positives;
        for (const Fingerprint& f : data.examples()) {
            if (*f.label == Label::Mgb) positives.push_back(f);
        }
        const Fingerprint full_ref = reference_fingerprint(positives);

        const std::size_t n = data.size();
        std::vector<Label> labels(n);
        std::vector<double> distances(n);
        std::size_t mgb_seen = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const Fingerprint& f = data.examples()[i];
            labels[i] = *f.label;
            const Fingerprint* ref = &full_ref;
            Fingerprint holdout_ref;
            if (cfg.sweep.holdout_reference && labels[i] == Label::Mgb) {
                std::vector<Fingerprint> rest = positives;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(mgb_seen));
                holdout_ref = reference_fingerprint(rest);
                ref = &holdout_ref;
                ++mgb_seen;
            }
            distances[i] = dtw_distance(f.coeffs, ref->coeffs).distance;
        }

        std::vector<double> grid;
        if (cfg.sweep.beta_max > 0.0) {
            grid = uniform_grid(cfg.sweep.beta_max, cfg.sweep.grid_size);
        } else {
            grid = default_beta_grid(distances, cfg.sweep.grid_size);
        }
        report = sweep_from_distances(labels, distances, grid);

        write_text_file(args.output_csv, sweep_csv(report));
        json summary;
        summary["n_mgb"] = report.n_mgb;
        summary["n_other"] = report.n_other;
        summary["grid"] = json{{"size", report.thresholds.size()},
                               {"beta_max", report.thresholds.back()}};
        summary["holdout_reference"] = cfg.sweep.holdout_reference;
        summary["best_w_avg"] = *std::max_element(report.w_avg.begin(), report.w_avg.end());
        if (report.optimal_band) {
            summary["optimal_band"] =
                json{{"beta_lo", report.optimal_band->beta_lo},
                     {"beta_hi", report.optimal_band->beta_hi}};
        } else {
            summary["optimal_band"] = nullptr;
        }
        summary["config"] = config_to_json(cfg);
        write_text_file(args.output_json, summary.dump(2) + "\n");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }

    if (report.optimal_band) {
        std::cout << "optimal band: beta in [" << format_real9(report.optimal_band->beta_lo)
                  << ", " << format_real9(report.optimal_band->beta_hi) << "]\n";
    } else {
        std::cout << "no threshold reaches W.Avg = 1\n";
    }
    return kExitOk;
}

int cmd_experiment(const ExperimentArgs& args, const PipelineConfig& cfg) {
    const ClassifierSettings settings = settings_from_config(cfg);
    TechniqueSpec technique;
    DatasetKind kind;
    try {
        technique = make_technique(args.technique, settings);
        kind = parse_dataset_kind(args.kind);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!args.dump_tree.empty() && args.technique != "c45") {
        std::cerr << "error: --dump-tree applies to technique c45 only\n";
        return kExitUsage;
    }

    LabeledDataset data;
    try {
        data = load_labeled_csv(args.input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    ExperimentOptions options;
    options.repeats = cfg.experiment.repeats;
    options.base_seed = cfg.experiment.base_seed;
    options.smote_k = cfg.smote.k_neighbors;
    options.smote_inside_folds = cfg.experiment.smote_inside_folds;
    options.jobs = cfg.jobs;

    EvalReport report;
    try {
        report = run_experiment(data, technique, kind, options);

        write_text_file(args.output_csv, eval_report_csv(report));
        json doc;
        doc["technique"] = report.technique;
        doc["kind"] = dataset_kind_name(report.kind);
        doc["runs"] = report.runs;
        doc["smote_inside_folds"] = report.smote_inside_folds;
        doc["stats"] = json{{"tp_rate", stats_to_json(report.tp_rate)},
                            {"tn_rate", stats_to_json(report.tn_rate)},
                            {"w_avg", stats_to_json(report.w_avg)}};
        json runs = json::array();
        for (const RunRecord& r : report.per_run) {
            runs.push_back(json{{"seed", r.seed},
                                {"counts",
                                 {{"tp", r.counts.tp},
                                  {"fn", r.counts.fn},
                                  {"tn", r.counts.tn},
                                  {"fp", r.counts.fp}}},
                                {"rates",
                                 {{"tp_rate", r.run_rates.tp_rate},
                                  {"tn_rate", r.run_rates.tn_rate},
                                  {"w_avg", r.run_rates.w_avg}}}});
        }
        doc["per_run"] = std::move(runs);
        doc["config"] = config_to_json(cfg);
        write_text_file(args.output_json, doc.dump(2) + "\n");

        if (!args.save_model.empty()) {
            const AnyModel model =
                train_any(args.technique, settings, data, cfg.experiment.base_seed);
            save_model_file(args.save_model, model);
        }
        if (!args.dump_tree.empty()) {
            write_text_file(args.dump_tree, render_tree(train_c45(data, settings.c45)));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }

    const auto cell = [](const RateStats& s) {
        std::string c = format_rate2(s.mean);
        if (s.std_dev) c += " +- " + format_rate2(*s.std_dev);
        return c;
    };
    std::cout << "technique=" << report.technique << " kind=" << dataset_kind_name(report.kind)
              << " runs=" << report.runs << "\n"
              << "  TP " << cell(report.tp_rate) << "  TN " << cell(report.tn_rate) << "  W.Avg "
              << cell(report.w_avg) << "\n";
    return kExitOk;
}

int cmd_fixtures(const FixturesArgs& args, const PipelineConfig& cfg) {
    std::vector<FixtureFile> files;
    try {
        files = generate_fixture_corpus(args.output_dir, cfg.fixtures.seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::cout << "wrote " << files.size() << " clips and labels.csv to " << args.output_dir
              << "\n";
    return kExitOk;
}

int cmd_report(const ReportArgs& args, const PipelineConfig&) {
    std::string csv = "technique,kind,stat,TN,TP,WAvg\n";
    std::vector<std::array<std::string, 5>> table;  // technique, kind, TP, TN, WAvg
    for (const std::string& path : args.inputs) {
        json doc;
        try {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw std::runtime_error("cannot open " + path);
            doc = json::parse(in);
            const std::string technique = doc.at("technique").get<std::string>();
            const std::string kind = doc.at("kind").get<std::string>();
            const json& stats = doc.at("stats");
            const json& tp = stats.at("tp_rate");
            const json& tn = stats.at("tn_rate");
            const json& wa = stats.at("w_avg");

            const std::string prefix = technique + "," + kind + ",";
            csv += prefix + "mean," + format_rate2(tn.at("mean").get<double>()) + "," +
                   format_rate2(tp.at("mean").get<double>()) + "," +
                   format_rate2(wa.at("mean").get<double>()) + "\n";
            if (tp.contains("std")) {
                csv += prefix + "std," + format_rate2(tn.at("std").get<double>()) + "," +
                       format_rate2(tp.at("std").get<double>()) + "," +
                       format_rate2(wa.at("std").get<double>()) + "\n";
            }
            table.push_back({technique, kind, stat_cell(tp), stat_cell(tn), stat_cell(wa)});
        } catch (const std::exception& e) {
            std::cerr << "error: " << path << ": " << e.what() << "\n";
            return kExitUsage;
        }
    }

    try {
        write_text_file(args.output, csv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }

    std::array<std::size_t, 5> width = {9, 4, 2, 2, 5};  // headers: technique kind TP TN W.Avg
    for (const auto& row : table) {
        for (std::size_t c = 0; c < 5; ++c) width[c] = std::max(width[c], row[c].size());
    }
    const auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w - s.size() + 2, ' ');
    };
    std::cout << pad("technique", width[0]) << pad("kind", width[1]) << pad("TP", width[2])
              << pad("TN", width[3]) << "W.Avg\n";
    for (const auto& row : table) {
        std::cout << pad(row[0], width[0]) << pad(row[1], width[1]) << pad(row[2], width[2])
                  << pad(row[3], width[3]) << row[4] << "\n";
    }
    std::cout << "wrote " << args.output << "\n";
    return kExitOk;
}

}  // namespace birdsong
