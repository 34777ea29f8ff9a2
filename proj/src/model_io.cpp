#include "birdsong/model_io.hpp"

#include <fstream>

namespace birdsong {
namespace {

using nlohmann::json;

json node_to_json(const TreeNode& n) {
    json j;
    j["n_mgb"] = n.n_mgb;
    j["n_other"] = n.n_other;
    j["prediction"] = label_name(n.prediction);
    if (!n.is_leaf()) {
        j["attribute"] = n.attribute;
        j["threshold"] = n.threshold;
        j["left"] = node_to_json(*n.left);
        j["right"] = node_to_json(*n.right);
    }
    return j;
}

std::unique_ptr<TreeNode> node_from_json(const json& j) {
    auto n = std::make_unique<TreeNode>();
    n->n_mgb = j.at("n_mgb").get<std::size_t>();
    n->n_other = j.at("n_other").get<std::size_t>();
    n->prediction = parse_label(j.at("prediction").get<std::string>());
    if (j.contains("attribute")) {
        n->attribute = j.at("attribute").get<int>();
        if (n->attribute < 0 || n->attribute >= static_cast<int>(kNumCoeffs)) {
            throw std::runtime_error("model: attribute index out of range");
        }
        n->threshold = j.at("threshold").get<double>();
        n->left = node_from_json(j.at("left"));
        n->right = node_from_json(j.at("right"));
    }
    return n;
}

json tree_to_json(const DecisionTree& t) { return json{{"root", node_to_json(*t.root)}}; }

DecisionTree tree_from_json(const json& j) { return DecisionTree{node_from_json(j.at("root"))}; }

json forest_to_json(const ForestModel& m) {
    json trees = json::array();
    for (const DecisionTree& t : m.trees) trees.push_back(tree_to_json(t));
    return json{{"features_per_split", m.features_per_split}, {"seed", m.seed},
                {"trees", std::move(trees)}};
}

ForestModel forest_from_json(const json& j) {
    ForestModel m;
    m.features_per_split = j.at("features_per_split").get<std::size_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const json& t : j.at("trees")) m.trees.push_back(tree_from_json(t));
    if (m.trees.empty()) throw std::runtime_error("model: forest has no trees");
    return m;
}

json gnb_to_json(const GaussianNB& m) {
    return json{{"prior", m.prior}, {"mean", m.mean}, {"variance", m.variance}};
}

GaussianNB gnb_from_json(const json& j) {
    GaussianNB m;
    m.prior = j.at("prior").get<std::array<double, 2>>();
    m.mean = j.at("mean").get<std::array<std::array<double, kNumCoeffs>, 2>>();
    m.variance = j.at("variance").get<std::array<std::array<double, kNumCoeffs>, 2>>();
    return m;
}

json mlp_to_json(const MlpModel& m) {
    return json{{"hidden", m.weights.hidden},
                {"loss", m.loss == MlpLoss::SquaredError ? "squared_error" : "cross_entropy"},
                {"w1", m.weights.w1},
                {"b1", m.weights.b1},
                {"w2", m.weights.w2},
                {"b2", m.weights.b2},
                {"feat_min", m.feat_min},
                {"feat_max", m.feat_max}};
}

MlpModel mlp_from_json(const json& j) {
    MlpModel m;
    m.weights.hidden = j.at("hidden").get<std::size_t>();
    const std::string loss = j.at("loss").get<std::string>();
    if (loss == "squared_error") {
        m.loss = MlpLoss::SquaredError;
    } else if (loss == "cross_entropy") {
        m.loss = MlpLoss::CrossEntropy;
    } else {
        throw std::runtime_error("model: unknown mlp loss '" + loss + "'");
    }
    m.weights.w1 = j.at("w1").get<std::vector<double>>();
    m.weights.b1 = j.at("b1").get<std::vector<double>>();
    m.weights.w2 = j.at("w2").get<std::vector<double>>();
    m.weights.b2 = j.at("b2").get<std::vector<double>>();
    m.feat_min = j.at("feat_min").get<std::array<double, kNumCoeffs>>();
    m.feat_max = j.at("feat_max").get<std::array<double, kNumCoeffs>>();
    const std::size_t h = m.weights.hidden;
    if (h == 0 || m.weights.w1.size() != h * kNumCoeffs || m.weights.b1.size() != h ||
        m.weights.w2.size() != 2 * h || m.weights.b2.size() != 2) {
        throw std::runtime_error("model: mlp weight shapes do not match hidden size");
    }
    return m;
}

}  // namespace

nlohmann::json model_to_json(const AnyModel& model) {
    json body = std::visit(
        [](const auto& m) -> json {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, DecisionTree>) {
                return tree_to_json(m);
            } else if constexpr (std::is_same_v<M, ForestModel>) {
                return forest_to_json(m);
            } else if constexpr (std::is_same_v<M, GaussianNB>) {
                return gnb_to_json(m);
            } else {
                return mlp_to_json(m);
            }
        },
        model);
    return json{{"format_version", kModelFormatVersion},
                {"technique", technique_of(model)},
                {"model", std::move(body)}};
}

AnyModel model_from_json(const nlohmann::json& doc) {
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
        throw std::runtime_error("model: unsupported format_version " + std::to_string(version));
    }
    const std::string technique = doc.at("technique").get<std::string>();
    const json& body = doc.at("model");
    if (technique == "c45") return tree_from_json(body);
    if (technique == "rf") return forest_from_json(body);
    if (technique == "nb") return gnb_from_json(body);
    if (technique == "mlp") return mlp_from_json(body);
    throw UnknownTechnique("unknown technique '" + technique + "' in model document");
}

void save_model_file(const std::string& path, const AnyModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << model_to_json(model).dump(2) << "\n";
    if (!out.flush()) throw std::runtime_error("failed writing " + path);
}

AnyModel load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return model_from_json(doc);
}

}  // namespace birdsong
