#include "birdsong/forest.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "birdsong/rng.hpp"

namespace birdsong {
namespace {

/// Draws `k` distinct attribute indices (partial Fisher-Yates), returned in
/// ascending order so the split scan is deterministic.
std::vector<int> sample_attributes(std::mt19937_64& rng, std::size_t k) {
    std::vector<int> pool(kNumCoeffs);
    for (std::size_t a = 0; a < kNumCoeffs; ++a) pool[a] = static_cast<int>(a);
    const std::size_t take = std::min(k, pool.size());
    for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + uniform_index(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(take);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

ForestModel train_forest(const LabeledDataset& data, const ForestParams& params) {
    if (data.size() == 0) throw EmptyDataset("train_forest: empty dataset");
    if (params.n_trees == 0) throw std::invalid_argument("train_forest: n_trees must be >= 1");
    if (params.features_per_split == 0) {
        throw std::invalid_argument("train_forest: features_per_split must be >= 1");
    }

    ForestModel model;
    model.features_per_split = params.features_per_split;
    model.seed = params.seed;
    model.trees.reserve(params.n_trees);

    const std::size_t n = data.size();
    for (std::size_t t = 0; t < params.n_trees; ++t) {
        std::mt19937_64 rng(derive_seed(params.seed, t));

        const LabeledDataset* train = &data;
        LabeledDataset bootstrap;
        if (params.bootstrap) {
            std::vector<Fingerprint> draws;
            draws.reserve(n);
            for (std::size_t d = 0; d < n; ++d) {
                draws.push_back(data.examples()[uniform_index(rng, n)]);
            }
            bootstrap = LabeledDataset::from_examples(std::move(draws), data.name());
            train = &bootstrap;
        }

        GrowthParams growth;
        growth.min_leaf = params.min_leaf;
        growth.feature_sampler = [&rng, k = params.features_per_split]() {
            return sample_attributes(rng, k);
        };
        model.trees.push_back(grow_tree(*train, growth));
    }
    return model;
}

std::vector<Label> forest_votes(const ForestModel& model, const Fingerprint& f) {
    std::vector<Label> votes;
    votes.reserve(model.trees.size());
    for (const DecisionTree& tree : model.trees) votes.push_back(predict_tree(tree, f));
    return votes;
}

Label predict_forest(const ForestModel& model, const Fingerprint& f) {
    if (model.trees.empty()) throw EmptyDataset("predict_forest: model has no trees");
    std::size_t mgb = 0;
    for (Label v : forest_votes(model, f)) {
        if (v == Label::Mgb) ++mgb;
    }
    return 2 * mgb > model.trees.size() ? Label::Mgb : Label::Other;
}

}  // namespace birdsong
