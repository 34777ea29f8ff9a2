#include "birdsong/evaluation.hpp"

#include <cmath>
#include <cstdio>

#include "birdsong/parallel.hpp"
#include "birdsong/rng.hpp"
#include "birdsong/sampling.hpp"

namespace birdsong {
namespace {

RateStats aggregate(const std::vector<RunRecord>& records, double Rates::*field) {
    std::vector<double> values(records.size());
    for (std::size_t r = 0; r < records.size(); ++r) values[r] = records[r].run_rates.*field;

    RateStats stats;
    const double n = static_cast<double>(values.size());
    stats.mean = pairwise_sum(values) / n;
    if (values.size() > 1) {
        std::vector<double> sq(values.size());
        for (std::size_t r = 0; r < values.size(); ++r) {
            const double d = values[r] - stats.mean;
            sq[r] = d * d;
        }
        stats.std_dev = std::sqrt(pairwise_sum(sq) / (n - 1.0));
    }
    return stats;
}

std::string format_rate2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

Rates rates(const ConfusionCounts& c, std::size_t n_pos, std::size_t n_neg) {
    if (n_pos == 0 || n_neg == 0) {
        throw ZeroClass(std::string("rates: no ") +
                        label_name(n_pos == 0 ? Label::Mgb : Label::Other) + " examples");
    }
    if (c.tp + c.fn != n_pos || c.tn + c.fp != n_neg) {
        throw std::invalid_argument("rates: counts do not add up to the class totals");
    }
    Rates r;
    r.tp_rate = 100.0 * static_cast<double>(c.tp) / static_cast<double>(n_pos);
    r.tn_rate = 100.0 * static_cast<double>(c.tn) / static_cast<double>(n_neg);
    r.w_avg = (static_cast<double>(n_pos) * r.tp_rate + static_cast<double>(n_neg) * r.tn_rate) /
              static_cast<double>(n_pos + n_neg);
    return r;
}

ConfusionCounts loocv(const LabeledDataset& data, const Trainer& trainer, std::uint64_t seed,
                      int jobs) {
    if (data.size() < 2) {
        throw DatasetTooSmall("loocv needs at least 2 examples, have " +
                              std::to_string(data.size()));
    }

    const std::size_t n = data.size();
    std::vector<Label> predicted(n, Label::Other);
    parallel_for(n, jobs, [&](std::size_t i) {
        std::vector<Fingerprint> train;
        train.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) train.push_back(data.examples()[j]);
        }
        LabeledDataset fold = LabeledDataset::from_examples(std::move(train), data.name());
        const Predictor predict = trainer(fold, derive_seed(seed, i));
        predicted[i] = predict(data.examples()[i]);
    });

    ConfusionCounts counts;
    for (std::size_t i = 0; i < n; ++i) {
        const bool positive = *data.examples()[i].label == Label::Mgb;
        const bool hit = predicted[i] == *data.examples()[i].label;
        if (positive) {
            ++(hit ? counts.tp : counts.fn);
        } else {
            ++(hit ? counts.tn : counts.fp);
        }
    }
    return counts;
}

const char* dataset_kind_name(DatasetKind k) {
    return k == DatasetKind::Simple ? "simple" : "extended";
}

DatasetKind parse_dataset_kind(const std::string& s) {
    if (s == "simple") return DatasetKind::Simple;
    if (s == "extended") return DatasetKind::Extended;
    throw std::invalid_argument("unknown dataset kind '" + s + "' (expected simple or extended)");
}

EvalReport run_experiment(const LabeledDataset& base, const TechniqueSpec& technique,
                          DatasetKind kind, const ExperimentOptions& options) {
    if (options.repeats == 0) throw std::invalid_argument("run_experiment: repeats must be >= 1");
    if (!technique.trainer) throw std::invalid_argument("run_experiment: technique has no trainer");

    EvalReport report;
    report.technique = technique.name;
    report.kind = kind;
    report.smote_inside_folds = kind == DatasetKind::Extended && options.smote_inside_folds;
    report.runs = technique.deterministic && kind == DatasetKind::Simple ? 1 : options.repeats;

    // With several runs the run loop is the parallel axis; a single run
    // parallelizes over its folds instead.
    const int run_jobs = report.runs > 1 ? options.jobs : 1;
    const int fold_jobs = report.runs > 1 ? 1 : options.jobs;

    report.per_run.resize(report.runs);
    parallel_for(report.runs, run_jobs, [&](std::size_t r) {
        const std::uint64_t run_seed = options.base_seed + r;
        ConfusionCounts counts;
        std::size_t n_pos = base.count(Label::Mgb);
        std::size_t n_neg = base.count(Label::Other);

        if (kind == DatasetKind::Simple) {
            counts = loocv(base, technique.trainer, run_seed, fold_jobs);
        } else if (!options.smote_inside_folds) {
            const LabeledDataset ext =
                extended_replicate(base, r, options.base_seed, options.smote_k);
            counts = loocv(ext, technique.trainer, run_seed, fold_jobs);
            n_pos = ext.count(Label::Mgb);
            n_neg = ext.count(Label::Other);
        } else {
            const Trainer wrapped = [&](const LabeledDataset& split, std::uint64_t fold_seed) {
                const std::size_t split_mgb = split.count(Label::Mgb);
                const std::size_t split_other = split.count(Label::Other);
                const Label minority = split_mgb <= split_other ? Label::Mgb : Label::Other;
                SmoteParams sp;
                sp.k_neighbors = options.smote_k;
                sp.n_synthetic = extended_synthetic_count(std::min(split_mgb, split_other),
                                                          std::max(split_mgb, split_other));
                sp.seed = derive_seed(fold_seed, 1);
                const LabeledDataset ext = smote(split, minority, sp);
                return technique.trainer(ext, derive_seed(fold_seed, 2));
            };
            counts = loocv(base, wrapped, run_seed, fold_jobs);
        }
        report.per_run[r] = RunRecord{run_seed, counts, rates(counts, n_pos, n_neg)};
    });

    report.tp_rate = aggregate(report.per_run, &Rates::tp_rate);
    report.tn_rate = aggregate(report.per_run, &Rates::tn_rate);
    report.w_avg = aggregate(report.per_run, &Rates::w_avg);
    return report;
}

std::string eval_report_csv(const EvalReport& report) {
    std::string csv = "technique,kind,stat,TN,TP,WAvg\n";
    const std::string prefix = report.technique + "," + dataset_kind_name(report.kind) + ",";
    csv += prefix + "mean," + format_rate2(report.tn_rate.mean) + "," +
           format_rate2(report.tp_rate.mean) + "," + format_rate2(report.w_avg.mean) + "\n";
    if (report.tp_rate.std_dev) {
        csv += prefix + "std," + format_rate2(*report.tn_rate.std_dev) + "," +
               format_rate2(*report.tp_rate.std_dev) + "," + format_rate2(*report.w_avg.std_dev) +
               "\n";
    }
    return csv;
}

}  // namespace birdsong
