#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "birdsong/dataset.hpp"

namespace birdsong {

struct DatasetTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroClass : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// MGB is the positive class.
struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;

    bool operator==(const ConfusionCounts&) const = default;
};

/// Percentages in [0, 100].
struct Rates {
    double tp_rate = 0.0;
    double tn_rate = 0.0;
    double w_avg = 0.0;

    bool operator==(const Rates&) const = default;
};

/// tp_rate = 100*tp/n_pos, tn_rate = 100*tn/n_neg,
/// w_avg = (n_pos*tp_rate + n_neg*tn_rate) / (n_pos + n_neg).
/// Requires n_pos = tp + fn and n_neg = tn + fp, both nonzero.
Rates rates(const ConfusionCounts& c, std::size_t n_pos, std::size_t n_neg);

/// A trained predictor; pure function of the model it closed over.
using Predictor = std::function<Label(const Fingerprint&)>;

/// Trains on a dataset with an explicit seed (ignored by deterministic
/// techniques) and returns the predictor.
using Trainer = std::function<Predictor(const LabeledDataset&, std::uint64_t)>;

struct TechniqueSpec {
    std::string name;
    bool deterministic = false;
    Trainer trainer;
};

/// Leave-one-out cross-validation: fold i trains on all examples but i with
/// RNG seed derive_seed(seed, i) and predicts example i. Folds may evaluate
/// in parallel (jobs > 1) without changing any count.
ConfusionCounts loocv(const LabeledDataset& data, const Trainer& trainer, std::uint64_t seed,
                      int jobs = 1);

enum class DatasetKind { Simple, Extended };

const char* dataset_kind_name(DatasetKind k);
DatasetKind parse_dataset_kind(const std::string& s);

struct RunRecord {
    std::uint64_t seed = 0;
    ConfusionCounts counts;
    Rates run_rates;
};

struct RateStats {
    double mean = 0.0;
    std::optional<double> std_dev;  // absent when runs == 1
};

struct EvalReport {
    std::string technique;
    DatasetKind kind = DatasetKind::Simple;
    std::size_t runs = 0;
    bool smote_inside_folds = false;
    RateStats tp_rate;
    RateStats tn_rate;
    RateStats w_avg;
    std::vector<RunRecord> per_run;
};

struct ExperimentOptions {
    std::size_t repeats = 100;
    std::uint64_t base_seed = 42;
    std::size_t smote_k = 5;          // Extended kind only
    bool smote_inside_folds = false;  // regenerate synthetics per fold instead of up front
    int jobs = 1;
};

/// Runs the repeated-LOOCV protocol for one technique. Simple kind: repeat r is a
/// LOOCV run over `base` with seed base_seed + r; deterministic techniques
/// run once and omit std fields. Extended kind: repeat r first builds
/// extended replicate r (SMOTE with seed base_seed + r), then runs LOOCV
/// over it; with smote_inside_folds the synthetics are instead regenerated
/// from each fold's training split, and rates are measured over `base`.
EvalReport run_experiment(const LabeledDataset& base, const TechniqueSpec& technique,
                          DatasetKind kind, const ExperimentOptions& options);

/// Summary rows: `technique,kind,stat,TN,TP,WAvg` with stat mean/std
/// and two-decimal percentages; the std row is present only when computed.
std::string eval_report_csv(const EvalReport& report);

}  // namespace birdsong
