#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "birdsong/dataset.hpp"

namespace birdsong {

struct TooFewMinority : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BadK : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SmoteParams {
    std::size_t k_neighbors = 5;
    std::size_t n_synthetic = 0;
    std::uint64_t seed = 0;
};

/// Append n_synthetic minority examples. Seed samples cycle through the
/// minority class in dataset order; each synthetic draws one of the seed's k
/// nearest minority neighbors (Euclidean, ties by index), then a gap
/// u in [0,1), and emits s + u*(neighbor - s). Per synthetic the generator is
/// consumed as: neighbor index, then gap. Originals are preserved unchanged
/// as a prefix; synthetic source_ids are "synthetic:<n>".
LabeledDataset smote(const LabeledDataset& data, Label minority, const SmoteParams& p);

/// Extended replicate r: smote with seed base_seed + r and
/// n_synthetic = (majority - 1) - minority, clamped at 0.
LabeledDataset extended_replicate(const LabeledDataset& data, std::size_t r,
                                  std::uint64_t base_seed, std::size_t k_neighbors = 5);

/// All replicates 0..replicates-1 of extended_replicate.
std::vector<LabeledDataset> make_extended_datasets(const LabeledDataset& data,
                                                   std::size_t replicates, std::uint64_t base_seed,
                                                   std::size_t k_neighbors = 5);

/// The minority growth target used by make_extended_datasets.
std::size_t extended_synthetic_count(std::size_t minority_count, std::size_t majority_count);

}  // namespace birdsong
