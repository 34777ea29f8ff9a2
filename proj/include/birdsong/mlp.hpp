#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "birdsong/dataset.hpp"

namespace birdsong {

struct NonFiniteLoss : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MlpLoss { SquaredError, CrossEntropy };

struct MlpParams {
    std::size_t hidden = 11;  // ~ (attributes + classes) / 2
    double learning_rate = 0.3;
    double momentum = 0.2;
    std::size_t epochs = 500;
    std::uint64_t seed = 0;
    MlpLoss loss = MlpLoss::SquaredError;
};

/// Fully connected 20 -> hidden -> 2 network, logistic sigmoid on both
/// layers. Output unit 0 is MGB, unit 1 Other. Matrices are stored row-major
/// by destination unit.
struct MlpWeights {
    std::size_t hidden = 0;
    std::vector<double> w1;  // hidden x kNumCoeffs
    std::vector<double> b1;  // hidden
    std::vector<double> w2;  // 2 x hidden
    std::vector<double> b2;  // 2

    bool operator==(const MlpWeights&) const = default;
};

struct MlpModel {
    MlpWeights weights;
    MlpLoss loss = MlpLoss::SquaredError;
    // Per-attribute training min/max; inputs are rescaled to [0,1], with
    // zero-range attributes mapping to 0.
    std::array<double, kNumCoeffs> feat_min{};
    std::array<double, kNumCoeffs> feat_max{};

    bool operator==(const MlpModel&) const = default;
};

/// Per-example backpropagation with fixed learning rate and momentum
/// (step = -lr * gradient + momentum * previous step), example order fixed
/// as dataset order each epoch. Weights initialize uniform in [-0.5, 0.5)
/// drawn in w1, b1, w2, b2 order. Throws NonFiniteLoss when an epoch's
/// cumulative loss stops being finite.
MlpModel train_mlp(const LabeledDataset& data, const MlpParams& params);

Label predict_mlp(const MlpModel& model, const Fingerprint& f);

/// Loss of one (already normalized) example; exposed for gradient checks.
double mlp_example_loss(const MlpWeights& w, std::span<const double> x, Label target,
                        MlpLoss loss = MlpLoss::SquaredError);

/// Analytic gradient of mlp_example_loss with respect to every weight,
/// returned in an MlpWeights-shaped container.
MlpWeights mlp_example_gradient(const MlpWeights& w, std::span<const double> x, Label target,
                                MlpLoss loss = MlpLoss::SquaredError);

}  // namespace birdsong
