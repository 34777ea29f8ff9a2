#include "birdsong/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace birdsong {

DtwResult dtw_distance(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw EmptyInput("dtw_distance: empty sequence");
    const std::size_t n = a.size(), m = b.size();

    enum Step : std::uint8_t { kStart, kDiag, kLeft, kUp };  // kLeft: (0,+1), kUp: (+1,0)
    std::vector<double> cost(n * m);
    std::vector<std::uint8_t> from(n * m);
    auto at = [m](std::size_t i, std::size_t j) { return i * m + j; };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double local = std::abs(a[i] - b[j]);
            if (i == 0 && j == 0) {
                cost[at(i, j)] = local;
                from[at(i, j)] = kStart;
            } else if (i == 0) {
                cost[at(i, j)] = local + cost[at(i, j - 1)];
                from[at(i, j)] = kLeft;
            } else if (j == 0) {
                cost[at(i, j)] = local + cost[at(i - 1, j)];
                from[at(i, j)] = kUp;
            } else {
                // tie preference: diagonal, then (0,+1), then (+1,0)
                double best = cost[at(i - 1, j - 1)];
                std::uint8_t step = kDiag;
                if (cost[at(i, j - 1)] < best) {
                    best = cost[at(i, j - 1)];
                    step = kLeft;
                }
                if (cost[at(i - 1, j)] < best) {
                    best = cost[at(i - 1, j)];
                    step = kUp;
                }
                cost[at(i, j)] = local + best;
                from[at(i, j)] = step;
            }
        }
    }

    DtwResult result;
    result.distance = cost[at(n - 1, m - 1)];
    std::size_t i = n - 1, j = m - 1;
    for (;;) {
        result.path.emplace_back(i, j);
        std::uint8_t step = from[at(i, j)];
        if (step == kStart) break;
        if (step == kDiag) {
            --i;
            --j;
        } else if (step == kLeft) {
            --j;
        } else {
            --i;
        }
    }
    std::reverse(result.path.begin(), result.path.end());
    return result;
}

Fingerprint reference_fingerprint(std::span<const Fingerprint> positives) {
    if (positives.empty()) throw EmptyInput("reference_fingerprint: no positive fingerprints");
    Fingerprint ref;
    ref.label = Label::Mgb;
    ref.source_id = "reference";
    for (std::size_t j = 0; j < kNumCoeffs; ++j) {
        double acc = 0.0;
        for (const auto& fp : positives) acc += fp.coeffs[j];
        ref.coeffs[j] = acc / static_cast<double>(positives.size());
    }
    return ref;
}

Label classify_by_threshold(const Fingerprint& f, const Fingerprint& ref, double beta) {
    if (beta < 0.0) throw std::invalid_argument("beta must be non-negative");
    return dtw_distance(f.coeffs, ref.coeffs).distance < beta ? Label::Mgb : Label::Other;
}

SweepReport sweep_from_distances(std::span<const Label> labels, std::span<const double> distances,
                                 std::span<const double> betas) {
    if (labels.size() != distances.size())
        throw std::invalid_argument("labels and distances differ in length");
    if (betas.empty()) throw std::invalid_argument("empty beta grid");
    if (!std::is_sorted(betas.begin(), betas.end()))
        throw std::invalid_argument("beta grid must be ascending");

    SweepReport report;
    for (Label l : labels) (l == Label::Mgb ? report.n_mgb : report.n_other)++;
    if (report.n_mgb == 0 || report.n_other == 0)
        throw SingleClassDataset(std::string("threshold sweep needs both classes; missing ") +
                                 (report.n_mgb == 0 ? "MGB" : "Other"));

    report.thresholds.assign(betas.begin(), betas.end());
    report.tp_rate.reserve(betas.size());
    report.tn_rate.reserve(betas.size());
    report.w_avg.reserve(betas.size());
    const double n_pos = static_cast<double>(report.n_mgb);
    const double n_neg = static_cast<double>(report.n_other);
    for (double beta : betas) {
        std::size_t tp = 0, tn = 0;
        for (std::size_t e = 0; e < labels.size(); ++e) {
            bool detected = distances[e] < beta;
            if (labels[e] == Label::Mgb && detected) ++tp;
            if (labels[e] == Label::Other && !detected) ++tn;
        }
        double tp_rate = static_cast<double>(tp) / n_pos;
        double tn_rate = static_cast<double>(tn) / n_neg;
        report.tp_rate.push_back(tp_rate);
        report.tn_rate.push_back(tn_rate);
        report.w_avg.push_back((n_pos * tp_rate + n_neg * tn_rate) / (n_pos + n_neg));
    }

    // longest contiguous run of w_avg == 1 (rates are exact count ratios)
    std::size_t best_start = 0, best_len = 0, run_start = 0, run_len = 0;
    for (std::size_t i = 0; i < report.w_avg.size(); ++i) {
        if (report.w_avg[i] == 1.0) {
            if (run_len == 0) run_start = i;
            ++run_len;
            if (run_len > best_len) {
                best_len = run_len;
                best_start = run_start;
            }
        } else {
            run_len = 0;
        }
    }
    if (best_len > 0)
        report.optimal_band = OptimalBand{report.thresholds[best_start],
                                          report.thresholds[best_start + best_len - 1]};
    return report;
}

SweepReport threshold_sweep(const LabeledDataset& data, const Fingerprint& ref,
                            std::span<const double> betas) {
    std::vector<Label> labels;
    std::vector<double> distances;
    labels.reserve(data.size());
    distances.reserve(data.size());
    for (const auto& fp : data.examples()) {
        labels.push_back(*fp.label);
        distances.push_back(dtw_distance(fp.coeffs, ref.coeffs).distance);
    }
    return sweep_from_distances(labels, distances, betas);
}

std::vector<double> default_beta_grid(std::span<const double> distances, std::size_t points) {
    if (points == 0) throw std::invalid_argument("beta grid needs at least one point");
    double max_d = 0.0;
    for (double d : distances) max_d = std::max(max_d, d);
    double hi = 1.1 * max_d;
    std::vector<double> betas(points);
    if (points == 1) {
        betas[0] = hi;
        return betas;
    }
    for (std::size_t i = 0; i < points; ++i)
        betas[i] = hi * static_cast<double>(i) / static_cast<double>(points - 1);
    return betas;
}

std::string sweep_csv(const SweepReport& report) {
    std::string out = "beta,tp,tn,wavg\n";
    for (std::size_t i = 0; i < report.thresholds.size(); ++i) {
        out += format_real9(report.thresholds[i]);
        out += ',';
        out += format_real9(report.tp_rate[i]);
        out += ',';
        out += format_real9(report.tn_rate[i]);
        out += ',';
        out += format_real9(report.w_avg[i]);
        out += '\n';
    }
    return out;
}

}  // namespace birdsong
