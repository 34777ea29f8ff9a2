#include "birdsong/tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>

namespace birdsong {
namespace {

double entropy2(std::size_t a, std::size_t b) {
    const std::size_t t = a + b;
    if (a == 0 || b == 0 || t == 0) return 0.0;
    const double pa = static_cast<double>(a) / static_cast<double>(t);
    const double pb = static_cast<double>(b) / static_cast<double>(t);
    return -(pa * std::log2(pa) + pb * std::log2(pb));
}

struct Candidate {
    int attr = -1;
    double threshold = 0.0;
    double gain = 0.0;
    double split_info = 0.0;
};

Label resolve_majority(std::size_t n_mgb, std::size_t n_other,
                       std::size_t parent_mgb, std::size_t parent_other) {
    if (n_mgb != n_other) return n_mgb > n_other ? Label::Mgb : Label::Other;
    if (parent_mgb != parent_other) return parent_mgb > parent_other ? Label::Mgb : Label::Other;
    return Label::Other;
}

class Grower {
public:
    Grower(const LabeledDataset& data, const GrowthParams& params)
        : data_(data), params_(params) {}

    std::unique_ptr<TreeNode> grow() {
        std::vector<std::size_t> items(data_.size());
        for (std::size_t i = 0; i < items.size(); ++i) items[i] = i;
        return build(items, data_.count(Label::Mgb), data_.count(Label::Other));
    }

private:
    std::unique_ptr<TreeNode> build(const std::vector<std::size_t>& items,
                                    std::size_t parent_mgb, std::size_t parent_other) {
        auto node = std::make_unique<TreeNode>();
        for (std::size_t i : items) {
            if (*data_.examples()[i].label == Label::Mgb) {
                ++node->n_mgb;
            } else {
                ++node->n_other;
            }
        }
        node->prediction = resolve_majority(node->n_mgb, node->n_other, parent_mgb, parent_other);

        const bool pure = node->n_mgb == 0 || node->n_other == 0;
        if (pure || items.size() < 2 * params_.min_leaf) return node;

        const Candidate best = select_split(items, node->n_mgb, node->n_other);
        if (best.attr < 0) return node;

        node->attribute = best.attr;
        node->threshold = best.threshold;
        std::vector<std::size_t> left_items;
        std::vector<std::size_t> right_items;
        for (std::size_t i : items) {
            const double v = data_.examples()[i].coeffs[static_cast<std::size_t>(best.attr)];
            (v <= best.threshold ? left_items : right_items).push_back(i);
        }
        node->left = build(left_items, node->n_mgb, node->n_other);
        node->right = build(right_items, node->n_mgb, node->n_other);
        return node;
    }

    Candidate select_split(const std::vector<std::size_t>& items,
                           std::size_t n_mgb, std::size_t n_other) const {
        std::vector<int> attrs;
        if (params_.feature_sampler) {
            attrs = params_.feature_sampler();
        } else {
            attrs.resize(kNumCoeffs);
            for (std::size_t a = 0; a < kNumCoeffs; ++a) attrs[a] = static_cast<int>(a);
        }

        const double node_entropy = entropy2(n_mgb, n_other);
        const double total = static_cast<double>(items.size());
        std::vector<Candidate> candidates;

        std::vector<std::pair<double, Label>> column(items.size());
        for (int attr : attrs) {
            for (std::size_t k = 0; k < items.size(); ++k) {
                const Fingerprint& f = data_.examples()[items[k]];
                column[k] = {f.coeffs[static_cast<std::size_t>(attr)], *f.label};
            }
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            std::size_t left_mgb = column[0].second == Label::Mgb ? 1u : 0u;
            std::size_t left_n = 1;
            for (std::size_t k = 1; k < column.size(); ++k) {
                if (column[k].first != column[k - 1].first) {
                    double thr = (column[k - 1].first + column[k].first) / 2.0;
                    // A midpoint can round up onto the larger value; fall back
                    // to the smaller value so the <=/> partition stays exact.
                    if (!(thr < column[k].first)) thr = column[k - 1].first;

                    const std::size_t left_other = left_n - left_mgb;
                    const std::size_t right_mgb = n_mgb - left_mgb;
                    const std::size_t right_other = n_other - left_other;
                    const std::size_t right_n = items.size() - left_n;
                    const double pl = static_cast<double>(left_n) / total;
                    const double pr = static_cast<double>(right_n) / total;
                    const double gain = std::max(
                        0.0, node_entropy - pl * entropy2(left_mgb, left_other)
                                          - pr * entropy2(right_mgb, right_other));
                    const double split_info = -(pl * std::log2(pl) + pr * std::log2(pr));
                    candidates.push_back({attr, thr, gain, split_info});
                }
                if (column[k].second == Label::Mgb) ++left_mgb;
                ++left_n;
            }
        }
        if (candidates.empty()) return {};

        double gain_sum = 0.0;
        for (const Candidate& c : candidates) gain_sum += c.gain;
        const double mean_gain = gain_sum / static_cast<double>(candidates.size());
        const double eps = 1e-12 * std::max(1.0, mean_gain);

        Candidate best;
        double best_ratio = -1.0;
        for (const Candidate& c : candidates) {
            if (c.gain + eps < mean_gain) continue;
            const double ratio = c.split_info > 0.0 ? c.gain / c.split_info : 0.0;
            if (ratio > best_ratio) {
                best_ratio = ratio;
                best = c;
            }
        }
        if (best.attr < 0 || best.gain <= 1e-12) return {};
        return best;
    }

    const LabeledDataset& data_;
    const GrowthParams& params_;
};

std::size_t count_nodes(const TreeNode* n) {
    if (n == nullptr) return 0;
    return 1 + count_nodes(n->left.get()) + count_nodes(n->right.get());
}

std::size_t count_leaves(const TreeNode* n) {
    if (n == nullptr) return 0;
    if (n->is_leaf()) return 1;
    return count_leaves(n->left.get()) + count_leaves(n->right.get());
}

std::size_t leaf_errors(const TreeNode& n) {
    return n.total() - (n.prediction == Label::Mgb ? n.n_mgb : n.n_other);
}

double prune_node(TreeNode& node, double cf) {
    const double as_leaf = pessimistic_error_count(node.total(), leaf_errors(node), cf);
    if (node.is_leaf()) return as_leaf;
    const double subtree = prune_node(*node.left, cf) + prune_node(*node.right, cf);
    if (as_leaf <= subtree) {
        node.attribute = -1;
        node.left.reset();
        node.right.reset();
        return as_leaf;
    }
    return subtree;
}

std::string format_threshold(double t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", t);
    return buf;
}

std::string leaf_suffix(const TreeNode& leaf) {
    std::string s = label_name(leaf.prediction);
    s += " (" + std::to_string(leaf.total());
    if (const std::size_t e = leaf_errors(leaf); e > 0) s += "/" + std::to_string(e);
    s += ")";
    return s;
}

void render_node(const TreeNode& node, std::size_t depth, std::string& out) {
    const std::string indent(depth * 3, ' ');
    std::string prefixed = indent;
    for (std::size_t d = 0; d < depth; ++d) prefixed[d * 3] = '|';

    const std::string test =
        coeff_name(static_cast<std::size_t>(node.attribute)) + " ";
    const TreeNode* branches[2] = {node.left.get(), node.right.get()};
    const char* ops[2] = {"<= ", "> "};
    for (int b = 0; b < 2; ++b) {
        out += prefixed + test + ops[b] + format_threshold(node.threshold);
        if (branches[b]->is_leaf()) {
            out += ": " + leaf_suffix(*branches[b]) + "\n";
        } else {
            out += ":\n";
            render_node(*branches[b], depth + 1, out);
        }
    }
}

}  // namespace

std::size_t DecisionTree::node_count() const { return count_nodes(root.get()); }
std::size_t DecisionTree::leaf_count() const { return count_leaves(root.get()); }

DecisionTree grow_tree(const LabeledDataset& data, const GrowthParams& params) {
    if (data.size() == 0) throw EmptyDataset("grow_tree: empty dataset");
    if (params.min_leaf == 0) throw std::invalid_argument("grow_tree: min_leaf must be >= 1");
    Grower grower(data, params);
    return DecisionTree{grower.grow()};
}

DecisionTree train_c45(const LabeledDataset& data, const C45Params& params) {
    if (!(params.prune_cf > 0.0 && params.prune_cf < 1.0)) {
        throw std::invalid_argument("train_c45: prune_cf must lie in (0, 1)");
    }
    GrowthParams growth;
    growth.min_leaf = params.min_leaf;
    DecisionTree tree = grow_tree(data, growth);
    prune_node(*tree.root, params.prune_cf);
    return tree;
}

Label predict_tree(const DecisionTree& tree, const Fingerprint& f) {
    const TreeNode* n = tree.root.get();
    if (n == nullptr) throw EmptyDataset("predict_tree: tree has no root");
    while (!n->is_leaf()) {
        const double v = f.coeffs[static_cast<std::size_t>(n->attribute)];
        n = v <= n->threshold ? n->left.get() : n->right.get();
    }
    return n->prediction;
}

std::string render_tree(const DecisionTree& tree) {
    if (tree.root == nullptr) throw EmptyDataset("render_tree: tree has no root");
    std::string out;
    if (tree.root->is_leaf()) {
        out = leaf_suffix(*tree.root) + "\n";
    } else {
        render_node(*tree.root, 0, out);
    }
    return out;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
    }
    // Acklam's rational approximation.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // One Halley step against the exact CDF tightens the result to
    // near-machine precision.
    const double err = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = err * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

double pessimistic_error_count(std::size_t n, std::size_t errors, double cf) {
    if (n == 0) return 0.0;
    const double z = normal_quantile(1.0 - cf);
    const double nn = static_cast<double>(n);
    const double f = static_cast<double>(errors) / nn;
    const double z2 = z * z;
    const double inner = std::max(0.0, f / nn - (f * f) / nn + z2 / (4.0 * nn * nn));
    const double p = (f + z2 / (2.0 * nn) + z * std::sqrt(inner)) / (1.0 + z2 / nn);
    return nn * p;
}

}  // namespace birdsong
