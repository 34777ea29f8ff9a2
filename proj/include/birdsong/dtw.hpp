#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "birdsong/dataset.hpp"
#include "birdsong/types.hpp"

namespace birdsong {

/// Optimal alignment between two sequences.
struct DtwResult {
    double distance = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> path;  // (0,0) .. (n-1,m-1)
};

/// Closed interval of thresholds on the sweep grid where w_avg reaches 1.
struct OptimalBand {
    double beta_lo = 0.0;
    double beta_hi = 0.0;
};

/// Detection rates as fractions in [0,1] per threshold.
struct SweepReport {
    std::vector<double> thresholds;
    std::vector<double> tp_rate;
    std::vector<double> tn_rate;
    std::vector<double> w_avg;
    std::optional<OptimalBand> optimal_band;
    std::size_t n_mgb = 0;
    std::size_t n_other = 0;
};

/// Dynamic-programming alignment with local cost |a_i - b_j| and steps
/// (+1,0), (0,+1), (+1,+1). Ties on the returned path prefer the diagonal
/// step, then the smaller step in i. No window constraint.
DtwResult dtw_distance(std::span<const double> a, std::span<const double> b);

/// Element-wise mean of the positive-class fingerprints, labeled MGB.
Fingerprint reference_fingerprint(std::span<const Fingerprint> positives);

/// MGB when the DTW distance to the reference is strictly below beta;
/// distance equal to beta classifies as Other.
Label classify_by_threshold(const Fingerprint& f, const Fingerprint& ref, double beta);

/// Rate curves over an ascending beta grid: tp = fraction of MGB examples
/// at distance < beta, tn = fraction of Other examples at distance >= beta,
/// w_avg = (n_mgb*tp + n_other*tn)/(n_mgb + n_other). The optimal band is
/// the longest contiguous grid run where w_avg == 1.
SweepReport threshold_sweep(const LabeledDataset& data, const Fingerprint& ref,
                            std::span<const double> betas);

/// Same curves from precomputed per-example distances (used by the
/// holdout-reference mode, where each example gets its own reference).
SweepReport sweep_from_distances(std::span<const Label> labels, std::span<const double> distances,
                                 std::span<const double> betas);

/// Uniform grid of `points` thresholds from 0 to 1.1 * max(distances).
std::vector<double> default_beta_grid(std::span<const double> distances, std::size_t points);

/// Sweep CSV: `beta,tp,tn,wavg` rows at 9 significant digits.
std::string sweep_csv(const SweepReport& report);

}  // namespace birdsong
