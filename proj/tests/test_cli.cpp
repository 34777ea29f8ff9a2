#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "birdsong/classifiers.hpp"
#include "birdsong/dataset.hpp"
#include "birdsong/model_io.hpp"
#include "proc.hpp"

using namespace birdsong;
using birdsong::testing::CliResult;
using birdsong::testing::make_temp_dir;
using birdsong::testing::run_cli;
using birdsong::testing::slurp;
using birdsong::testing::spit;

namespace fs = std::filesystem;

namespace {

std::size_t line_count(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

// Fixture corpus and its fingerprint CSV, generated once per test process.
struct Corpus {
    fs::path wav_dir;
    fs::path csv;
};

const Corpus& corpus() {
    static const Corpus c = [] {
        Corpus built;
        built.wav_dir = make_temp_dir("cli_corpus");
        if (run_cli("fixtures '" + built.wav_dir.string() + "'").exit_code != 0)
            throw std::runtime_error("fixture generation failed");
        built.csv = built.wav_dir / "fingerprints.csv";
        if (run_cli("extract '" + built.wav_dir.string() + "' -o '" + built.csv.string() + "'")
                .exit_code != 0)
            throw std::runtime_error("extraction failed");
        return built;
    }();
    return c;
}

}  // namespace

TEST_CASE("running without a subcommand prints usage and exits 2") {
    const CliResult r = run_cli("");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);

    CHECK(run_cli("--help").exit_code == 0);
    const CliResult help = run_cli("--help");
    for (const char* sub : {"extract", "smote", "sweep", "experiment", "fixtures", "report"})
        CHECK(help.out.find(sub) != std::string::npos);

    CHECK(run_cli("bogus-subcommand").exit_code == 2);
}

TEST_CASE("config reference lists every key with its default") {
    const CliResult r = run_cli("--config-reference");
    CHECK(r.exit_code == 0);
    for (const char* key : {"mfcc.frame_len", "smote.replicates", "sweep.grid_size",
                            "c45.prune_cf", "forest.n_trees", "mlp.hidden", "experiment.repeats",
                            "fixtures.seed", "jobs"})
        CHECK_MESSAGE(r.out.find(key) != std::string::npos, "missing key ", key);
    CHECK(r.out.find("1024") != std::string::npos);
}

TEST_CASE("fixtures write a deterministic 24-clip corpus") {
    const auto a = make_temp_dir("fixtures_a");
    const auto b = make_temp_dir("fixtures_b");
    CHECK(run_cli("fixtures '" + a.string() + "'").exit_code == 0);
    CHECK(run_cli("fixtures '" + b.string() + "'").exit_code == 0);

    std::size_t wavs = 0;
    for (const auto& entry : fs::directory_iterator(a))
        if (entry.path().extension() == ".wav") ++wavs;
    CHECK(wavs == 24);
    CHECK(fs::exists(a / "labels.csv"));
    CHECK(line_count(slurp(a / "labels.csv")) == 24);

    for (const char* name : {"mgb_01.wav", "other_05.wav", "labels.csv"})
        CHECK(slurp(a / name) == slurp(b / name));

    const auto c = make_temp_dir("fixtures_c");
    CHECK(run_cli("fixtures --seed 7 '" + c.string() + "'").exit_code == 0);
    CHECK(slurp(a / "mgb_01.wav") != slurp(c / "mgb_01.wav"));

    fs::remove_all(b);
    fs::remove_all(c);
}

TEST_CASE("extract fingerprints the corpus with 7 MGB and 17 Other rows") {
    const auto fps = read_fingerprint_csv(corpus().csv.string());
    REQUIRE(fps.size() == 24);
    std::size_t mgb = 0;
    for (const auto& f : fps)
        if (f.label == Label::Mgb) ++mgb;
    CHECK(mgb == 7);

    const std::string text = slurp(corpus().csv);
    CHECK(text.rfind("source_id,label,C01,", 0) == 0);
    CHECK(line_count(text) == 25);

    // Same inputs, same bytes.
    const auto again = make_temp_dir("extract_again") / "fp.csv";
    CHECK(run_cli("extract '" + corpus().wav_dir.string() + "' -o '" + again.string() + "'")
              .exit_code == 0);
    CHECK(slurp(again) == text);
}

TEST_CASE("extract handles empty and missing directories") {
    const auto empty = make_temp_dir("extract_empty");
    const auto out = empty / "fp.csv";
    const CliResult r = run_cli("extract '" + empty.string() + "' -o '" + out.string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(slurp(out).rfind("source_id,label,", 0) == 0);
    CHECK(line_count(slurp(out)) == 1);  // header only

    CHECK(run_cli("extract '" + (empty / "nope").string() + "' -o '" + out.string() + "'")
              .exit_code == 2);
}

TEST_CASE("extract reports corrupt files and keeps the valid rows") {
    const auto dir = make_temp_dir("extract_corrupt");
    fs::copy_file(corpus().wav_dir / "mgb_01.wav", dir / "mgb_01.wav");
    fs::copy_file(corpus().wav_dir / "other_01.wav", dir / "other_01.wav");
    spit(dir / "broken.wav", "this is not audio");
    spit(dir / "labels.csv", "mgb_01.wav,MGB\nother_01.wav,Other\nbroken.wav,Other\n");

    const auto out = dir / "fp.csv";
    const CliResult r = run_cli("extract '" + dir.string() + "' -o '" + out.string() + "'");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("broken.wav") != std::string::npos);
    CHECK(read_fingerprint_csv(out.string()).size() == 2);
}

TEST_CASE("smote writes balanced replicates plus a manifest") {
    const auto dir = make_temp_dir("smote_out");
    const CliResult r = run_cli("smote '" + corpus().csv.string() + "' -o '" + dir.string() +
                                "' --replicates 3 --seed 42");
    CHECK(r.exit_code == 0);

    for (int i = 0; i < 3; ++i) {
        const auto path = dir / ("extended_00" + std::to_string(i) + ".csv");
        REQUIRE(fs::exists(path));
        const LabeledDataset ext = load_labeled_csv(path.string());
        CHECK(ext.count(Label::Mgb) == 16);
        CHECK(ext.count(Label::Other) == 17);
    }
    CHECK_FALSE(fs::exists(dir / "extended_003.csv"));

    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest.at("replicates") == 3);
    CHECK(manifest.at("base_seed") == 42);
    CHECK(manifest.at("k_neighbors") == 5);
    REQUIRE(manifest.at("files").size() == 3);
    CHECK(manifest["files"][1].at("seed") == 43);
    CHECK(manifest["files"][1].at("n_mgb") == 16);
    CHECK(manifest["files"][1].at("n_other") == 17);
}

TEST_CASE("smote refuses a single-class input") {
    const auto dir = make_temp_dir("smote_single");
    std::vector<Fingerprint> fps(3);
    for (std::size_t i = 0; i < fps.size(); ++i) {
        fps[i].label = Label::Mgb;
        fps[i].source_id = "m" + std::to_string(i);
        fps[i].coeffs[0] = static_cast<double>(i);
    }
    const auto csv = dir / "mgb_only.csv";
    write_fingerprint_csv(csv.string(), fps);

    const CliResult r =
        run_cli("smote '" + csv.string() + "' -o '" + (dir / "out").string() + "'");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("Other") != std::string::npos);
}

TEST_CASE("sweep finds a clean band on the corpus") {
    const auto dir = make_temp_dir("sweep_out");
    const auto csv = dir / "sweep.csv";
    const auto json = dir / "sweep.json";
    const CliResult r = run_cli("sweep '" + corpus().csv.string() + "' --output-csv '" +
                                csv.string() + "' --output-json '" + json.string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("optimal band: beta in [") != std::string::npos);

    const std::string curves = slurp(csv);
    CHECK(curves.rfind("beta,tp,tn,wavg\n", 0) == 0);
    CHECK(line_count(curves) == 201);  // header + default 200-point grid

    const auto doc = nlohmann::json::parse(slurp(json));
    CHECK(doc.at("n_mgb") == 7);
    CHECK(doc.at("n_other") == 17);
    CHECK(doc.at("best_w_avg") == 1.0);
    CHECK(doc.at("optimal_band").at("beta_lo").get<double>() > 0.0);
    CHECK(doc.at("optimal_band").at("beta_hi").get<double>() >
          doc.at("optimal_band").at("beta_lo").get<double>());
    CHECK(doc.at("grid").at("size") == 200);

    // Re-running produces identical bytes.
    const auto csv2 = dir / "sweep2.csv";
    run_cli("sweep '" + corpus().csv.string() + "' --output-csv '" + csv2.string() +
            "' --output-json '" + (dir / "sweep2.json").string() + "'");
    CHECK(slurp(csv2) == curves);

    // The holdout variant scores each MGB row against a reference that
    // excludes it; on this corpus the band survives.
    const CliResult holdout =
        run_cli("sweep '" + corpus().csv.string() + "' --holdout-reference --output-csv '" +
                (dir / "h.csv").string() + "' --output-json '" + (dir / "h.json").string() + "'");
    CHECK(holdout.exit_code == 0);
    CHECK(nlohmann::json::parse(slurp(dir / "h.json")).at("holdout_reference") == true);
}

TEST_CASE("sweep grid size one emits a single row") {
    const auto dir = make_temp_dir("sweep_one");
    const auto csv = dir / "sweep.csv";
    const CliResult r = run_cli("sweep '" + corpus().csv.string() + "' --grid 1 --output-csv '" +
                                csv.string() + "' --output-json '" + (dir / "s.json").string() +
                                "'");
    CHECK(r.exit_code == 0);
    CHECK(line_count(slurp(csv)) == 2);
}

TEST_CASE("sweep refuses single-class input") {
    const auto dir = make_temp_dir("sweep_single");
    std::vector<Fingerprint> fps(3);
    for (std::size_t i = 0; i < fps.size(); ++i) {
        fps[i].label = Label::Other;
        fps[i].source_id = "o" + std::to_string(i);
        fps[i].coeffs[0] = static_cast<double>(i);
    }
    const auto csv = dir / "other_only.csv";
    write_fingerprint_csv(csv.string(), fps);
    const CliResult r = run_cli("sweep '" + csv.string() + "' --output-csv '" +
                                (dir / "s.csv").string() + "' --output-json '" +
                                (dir / "s.json").string() + "'");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("MGB") != std::string::npos);
}

TEST_CASE("experiment: deterministic simple runs have no std row") {
    const auto dir = make_temp_dir("exp_nb");
    const auto csv = dir / "e.csv";
    const auto json = dir / "e.json";
    const CliResult r = run_cli("experiment '" + corpus().csv.string() +
                                "' -t nb -k simple --output-csv '" + csv.string() +
                                "' --output-json '" + json.string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("runs=1") != std::string::npos);

    const std::string table = slurp(csv);
    CHECK(line_count(table) == 2);  // header + mean only
    CHECK(table.find(",std,") == std::string::npos);

    const auto doc = nlohmann::json::parse(slurp(json));
    CHECK(doc.at("technique") == "nb");
    CHECK(doc.at("kind") == "simple");
    CHECK(doc.at("runs") == 1);
    CHECK_FALSE(doc.at("stats").at("w_avg").contains("std"));
    CHECK(doc.at("per_run").size() == 1);
    CHECK(doc.at("per_run")[0].at("seed") == 42);
}

TEST_CASE("experiment: stochastic techniques repeat and report std") {
    const auto dir = make_temp_dir("exp_rf");
    const auto csv = dir / "e.csv";
    const auto json = dir / "e.json";
    const std::string cmd = "experiment '" + corpus().csv.string() +
                            "' -t rf -k simple --repeats 5 --rf-trees 25 --output-csv '" +
                            csv.string() + "' --output-json '" + json.string() + "'";
    const CliResult r = run_cli(cmd);
    CHECK(r.exit_code == 0);

    const std::string table = slurp(csv);
    CHECK(line_count(table) == 3);
    CHECK(table.find(",std,") != std::string::npos);

    const auto doc = nlohmann::json::parse(slurp(json));
    CHECK(doc.at("runs") == 5);
    CHECK(doc.at("stats").at("w_avg").contains("std"));
    CHECK(doc.at("per_run").size() == 5);

    // Same flags, same bytes.
    const auto json2 = dir / "e2.json";
    run_cli("experiment '" + corpus().csv.string() +
            "' -t rf -k simple --repeats 5 --rf-trees 25 --output-csv '" +
            (dir / "e2.csv").string() + "' --output-json '" + json2.string() + "'");
    CHECK(slurp(json2) == slurp(json));
}

TEST_CASE("experiment saves models and tree dumps on request") {
    const auto dir = make_temp_dir("exp_artifacts");
    const auto model_path = dir / "model.json";
    const auto tree_path = dir / "tree.txt";
    const CliResult r = run_cli("experiment '" + corpus().csv.string() +
                                "' -t c45 -k simple --save-model '" + model_path.string() +
                                "' --dump-tree '" + tree_path.string() + "' --output-csv '" +
                                (dir / "e.csv").string() + "' --output-json '" +
                                (dir / "e.json").string() + "'");
    CHECK(r.exit_code == 0);

    const AnyModel model = load_model_file(model_path.string());
    CHECK(technique_of(model) == "c45");

    const std::string readout = slurp(tree_path);
    CHECK(readout.find(" <= ") != std::string::npos);
    CHECK(readout.find(":") != std::string::npos);
}

TEST_CASE("experiment argument failures exit 2, computation failures exit 3") {
    const auto dir = make_temp_dir("exp_errors");
    const std::string outs = " --output-csv '" + (dir / "e.csv").string() + "' --output-json '" +
                             (dir / "e.json").string() + "'";

    const CliResult unknown =
        run_cli("experiment '" + corpus().csv.string() + "' -t svm" + outs);
    CHECK(unknown.exit_code == 2);
    CHECK(unknown.err.find("c45, rf, nb, mlp") != std::string::npos);

    CHECK(run_cli("experiment '" + corpus().csv.string() + "' -t nb -k weird" + outs).exit_code ==
          2);
    CHECK(run_cli("experiment '" + corpus().csv.string() + "' -t nb --dump-tree '" +
                  (dir / "t.txt").string() + "'" + outs)
              .exit_code == 2);

    // A labeled but unusable dataset (one example) fails during evaluation.
    std::vector<Fingerprint> fps(1);
    fps[0].label = Label::Mgb;
    fps[0].source_id = "only";
    const auto tiny = dir / "tiny.csv";
    write_fingerprint_csv(tiny.string(), fps);
    const CliResult small = run_cli("experiment '" + tiny.string() + "' -t nb" + outs);
    CHECK(small.exit_code == 3);
}

TEST_CASE("report merges experiment JSONs into one table") {
    const auto dir = make_temp_dir("report_out");
    const std::string nb_json = (dir / "nb.json").string();
    const std::string rf_json = (dir / "rf.json").string();
    run_cli("experiment '" + corpus().csv.string() + "' -t nb --output-csv '" +
            (dir / "nb.csv").string() + "' --output-json '" + nb_json + "'");
    run_cli("experiment '" + corpus().csv.string() +
            "' -t rf --repeats 3 --rf-trees 25 --output-csv '" + (dir / "rf.csv").string() +
            "' --output-json '" + rf_json + "'");

    const auto merged = dir / "report.csv";
    const CliResult r =
        run_cli("report '" + nb_json + "' '" + rf_json + "' -o '" + merged.string() + "'");
    CHECK(r.exit_code == 0);

    const std::string table = slurp(merged);
    CHECK(table.rfind("technique,kind,stat,TN,TP,WAvg\n", 0) == 0);
    CHECK(line_count(table) == 4);  // nb mean + rf mean + rf std
    CHECK(table.find("nb,simple,mean,") != std::string::npos);
    CHECK(table.find("rf,simple,std,") != std::string::npos);
    CHECK(r.out.find("technique") != std::string::npos);  // stdout table

    spit(dir / "junk.json", "{]");
    CHECK(run_cli("report '" + (dir / "junk.json").string() + "' -o '" + merged.string() + "'")
              .exit_code == 2);
}

TEST_CASE("config files set defaults and flags override them") {
    const auto dir = make_temp_dir("config");
    const auto cfg = dir / "birdsong.json";
    spit(cfg, "{\"sweep\": {\"grid_size\": 5}}\n");

    const auto csv = dir / "s.csv";
    const std::string tail = "' --output-csv '" + csv.string() + "' --output-json '" +
                             (dir / "s.json").string() + "'";
    CHECK(run_cli("--config '" + cfg.string() + "' sweep '" + corpus().csv.string() + tail)
              .exit_code == 0);
    CHECK(line_count(slurp(csv)) == 6);  // header + 5 grid points

    CHECK(run_cli("--config '" + cfg.string() + "' sweep --grid 3 '" + corpus().csv.string() +
                  tail)
              .exit_code == 0);
    CHECK(line_count(slurp(csv)) == 4);  // flag wins over the file

    spit(cfg, "{\"sweep\": {\"grid\": 5}}\n");
    const CliResult unknown =
        run_cli("--config '" + cfg.string() + "' sweep '" + corpus().csv.string() + tail);
    CHECK(unknown.exit_code == 2);
    CHECK(unknown.err.find("sweep.grid") != std::string::npos);

    spit(cfg, "{\"sweep\": [1,2]}\n");
    CHECK(run_cli("--config '" + cfg.string() + "' sweep '" + corpus().csv.string() + tail)
              .exit_code == 2);

    spit(cfg, "not json");
    CHECK(run_cli("--config '" + cfg.string() + "' sweep '" + corpus().csv.string() + tail)
              .exit_code == 2);

    CHECK(run_cli("--config '" + (dir / "missing.json").string() + "' sweep '" +
                  corpus().csv.string() + tail)
              .exit_code == 2);
}
