#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "birdsong/dataset.hpp"

namespace birdsong {

/// Binary tree node. Internal nodes test coeffs[attribute] <= threshold
/// (left branch) vs > threshold (right branch); attribute is -1 at leaves.
struct TreeNode {
    int attribute = -1;
    double threshold = 0.0;
    Label prediction = Label::Other;
    std::size_t n_mgb = 0;
    std::size_t n_other = 0;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;

    bool is_leaf() const { return attribute < 0; }
    std::size_t total() const { return n_mgb + n_other; }
};

struct DecisionTree {
    std::unique_ptr<TreeNode> root;

    std::size_t node_count() const;
    std::size_t leaf_count() const;
};

/// Returns the candidate attribute indices to scan at one node; called once
/// per node in depth-first (left before right) order. Null means all.
using FeatureSampler = std::function<std::vector<int>()>;

struct GrowthParams {
    std::size_t min_leaf = 2;  // nodes with fewer than 2*min_leaf examples become leaves
    FeatureSampler feature_sampler;
};

struct C45Params {
    std::size_t min_leaf = 2;
    double prune_cf = 0.25;  // confidence factor in (0,1); smaller prunes harder
};

/// Greedy top-down induction. Candidate thresholds are midpoints between
/// consecutive distinct sorted values; among candidates whose information
/// gain reaches the mean gain at the node, the split with the best gain
/// ratio wins. Recursion stops on purity, on fewer than 2*min_leaf examples,
/// or when no candidate has positive gain. Leaf ties go to the class with
/// more examples in the parent, then Other.
DecisionTree grow_tree(const LabeledDataset& data, const GrowthParams& params);

/// grow_tree followed by pessimistic-error pruning: a subtree collapses when
/// the upper confidence bound (at prune_cf) of its error count is no better
/// than the bound for the node as a single leaf.
DecisionTree train_c45(const LabeledDataset& data, const C45Params& params = {});

Label predict_tree(const DecisionTree& tree, const Fingerprint& f);

/// Indented text readout, one test per line:
///   C02 <= -52.33:
///   |  C06 <= 5.69: MGB (2)
///   |  C06 > 5.69: Other (10/1)
///   C02 > -52.33: MGB (12)
/// Leaf annotations are (examples) or (examples/errors).
std::string render_tree(const DecisionTree& tree);

/// Inverse standard normal CDF (Acklam's approximation plus one Halley
/// refinement); used for the pruning confidence bound.
double normal_quantile(double p);

/// Upper confidence bound on the error count of a leaf with n examples and
/// e errors, at one-sided confidence 1 - cf.
double pessimistic_error_count(std::size_t n, std::size_t errors, double cf);

}  // namespace birdsong
