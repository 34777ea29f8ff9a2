#include "birdsong/classifiers.hpp"

#include <memory>
#include <type_traits>

namespace birdsong {
namespace {

std::string valid_names() {
    std::string s;
    for (const std::string& n : technique_names()) {
        if (!s.empty()) s += ", ";
        s += n;
    }
    return s;
}

}  // namespace

const std::vector<std::string>& technique_names() {
    static const std::vector<std::string> names = {"c45", "rf", "nb", "mlp"};
    return names;
}

TechniqueSpec make_technique(const std::string& name, const ClassifierSettings& settings) {
    TechniqueSpec spec;
    spec.name = name;
    if (name == "c45") {
        spec.deterministic = true;
        spec.trainer = [params = settings.c45](const LabeledDataset& data, std::uint64_t) {
            auto tree = std::make_shared<const DecisionTree>(train_c45(data, params));
            return Predictor([tree](const Fingerprint& f) { return predict_tree(*tree, f); });
        };
    } else if (name == "rf") {
        spec.deterministic = false;
        spec.trainer = [params = settings.forest](const LabeledDataset& data, std::uint64_t seed) {
            ForestParams p = params;
            p.seed = seed;
            auto model = std::make_shared<const ForestModel>(train_forest(data, p));
            return Predictor([model](const Fingerprint& f) { return predict_forest(*model, f); });
        };
    } else if (name == "nb") {
        spec.deterministic = true;
        spec.trainer = [](const LabeledDataset& data, std::uint64_t) {
            return Predictor(
                [model = train_gnb(data)](const Fingerprint& f) { return predict_gnb(model, f); });
        };
    } else if (name == "mlp") {
        spec.deterministic = false;
        spec.trainer = [params = settings.mlp](const LabeledDataset& data, std::uint64_t seed) {
            MlpParams p = params;
            p.seed = seed;
            auto model = std::make_shared<const MlpModel>(train_mlp(data, p));
            return Predictor([model](const Fingerprint& f) { return predict_mlp(*model, f); });
        };
    } else {
        throw UnknownTechnique("unknown technique '" + name + "' (valid: " + valid_names() + ")");
    }
    return spec;
}

AnyModel train_any(const std::string& name, const ClassifierSettings& settings,
                   const LabeledDataset& data, std::uint64_t seed) {
    if (name == "c45") return train_c45(data, settings.c45);
    if (name == "rf") {
        ForestParams p = settings.forest;
        p.seed = seed;
        return train_forest(data, p);
    }
    if (name == "nb") return train_gnb(data);
    if (name == "mlp") {
        MlpParams p = settings.mlp;
        p.seed = seed;
        return train_mlp(data, p);
    }
    throw UnknownTechnique("unknown technique '" + name + "' (valid: " + valid_names() + ")");
}

Label predict_any(const AnyModel& model, const Fingerprint& f) {
    return std::visit(
        [&f](const auto& m) -> Label {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, DecisionTree>) {
                return predict_tree(m, f);
            } else if constexpr (std::is_same_v<M, ForestModel>) {
                return predict_forest(m, f);
            } else if constexpr (std::is_same_v<M, GaussianNB>) {
                return predict_gnb(m, f);
            } else {
                return predict_mlp(m, f);
            }
        },
        model);
}

std::string technique_of(const AnyModel& model) {
    static constexpr const char* names[] = {"c45", "rf", "nb", "mlp"};
    return names[model.index()];
}

}  // namespace birdsong
