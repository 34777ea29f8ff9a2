#pragma once

#include <string>
#include <variant>
#include <vector>

#include "birdsong/bayes.hpp"
#include "birdsong/evaluation.hpp"
#include "birdsong/forest.hpp"
#include "birdsong/mlp.hpp"
#include "birdsong/tree.hpp"

namespace birdsong {

struct UnknownTechnique : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Hyperparameters for every technique; the seed fields inside are ignored
/// by the trainers, which receive their seed per training call.
struct ClassifierSettings {
    C45Params c45;
    ForestParams forest;
    MlpParams mlp;
};

/// {"c45", "rf", "nb", "mlp"}.
const std::vector<std::string>& technique_names();

/// Builds the TechniqueSpec for one of technique_names(). c45 and nb are
/// deterministic. Throws UnknownTechnique with the valid names listed.
TechniqueSpec make_technique(const std::string& name, const ClassifierSettings& settings = {});

using AnyModel = std::variant<DecisionTree, ForestModel, GaussianNB, MlpModel>;

/// Trains the named technique once on the full dataset.
AnyModel train_any(const std::string& name, const ClassifierSettings& settings,
                   const LabeledDataset& data, std::uint64_t seed);

Label predict_any(const AnyModel& model, const Fingerprint& f);

/// The registry name of the model held by the variant.
std::string technique_of(const AnyModel& model);

}  // namespace birdsong
