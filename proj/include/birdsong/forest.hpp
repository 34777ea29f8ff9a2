#pragma once

#include <cstdint>
#include <vector>

#include "birdsong/tree.hpp"

namespace birdsong {

struct ForestParams {
    std::size_t n_trees = 100;
    std::size_t features_per_split = 5;  // floor(log2(20) + 1)
    std::size_t min_leaf = 1;
    std::uint64_t seed = 0;
    bool bootstrap = true;  // false trains every tree on the full dataset (test hook)
};

struct ForestModel {
    std::vector<DecisionTree> trees;
    std::size_t features_per_split = 0;
    std::uint64_t seed = 0;
};

/// Bagged ensemble of unpruned trees. Tree t draws its bootstrap sample and
/// per-node feature subsets from an RNG seeded with derive_seed(seed, t), so
/// the model is a pure function of (data, params).
ForestModel train_forest(const LabeledDataset& data, const ForestParams& params);

/// One label per tree, in tree order.
std::vector<Label> forest_votes(const ForestModel& model, const Fingerprint& f);

/// Unweighted majority vote; ties go to Other.
Label predict_forest(const ForestModel& model, const Fingerprint& f);

}  // namespace birdsong
