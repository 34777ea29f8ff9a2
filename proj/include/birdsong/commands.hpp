#pragma once

#include <string>
#include <vector>

#include "birdsong/config.hpp"

namespace birdsong {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;      // some inputs failed, the rest were processed
inline constexpr int kExitUsage = 2;        // bad arguments or unusable input
inline constexpr int kExitComputation = 3;  // pipeline raised while computing

struct ExtractArgs {
    std::string input_dir;
    std::string labels;  // empty selects <input_dir>/labels.csv
    std::string output;
};

struct SmoteArgs {
    std::string input;
    std::string output_dir;
};

struct SweepArgs {
    std::string input;
    std::string output_csv = "sweep.csv";
    std::string output_json = "sweep.json";
};

struct ExperimentArgs {
    std::string input;
    std::string technique;
    std::string kind = "simple";
    std::string output_csv = "experiment.csv";
    std::string output_json = "experiment.json";
    std::string save_model;  // optional model JSON path
    std::string dump_tree;   // optional tree readout path, c45 only
};

struct FixturesArgs {
    std::string output_dir;
};

struct ReportArgs {
    std::vector<std::string> inputs;
    std::string output = "report.csv";
};

int cmd_extract(const ExtractArgs& args, const PipelineConfig& cfg);
int cmd_smote(const SmoteArgs& args, const PipelineConfig& cfg);
int cmd_sweep(const SweepArgs& args, const PipelineConfig& cfg);
int cmd_experiment(const ExperimentArgs& args, const PipelineConfig& cfg);
int cmd_fixtures(const FixturesArgs& args, const PipelineConfig& cfg);
int cmd_report(const ReportArgs& args, const PipelineConfig& cfg);

}  // namespace birdsong
