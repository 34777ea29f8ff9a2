#pragma once

#include <array>

#include "birdsong/dataset.hpp"

namespace birdsong {

inline constexpr double kVarianceFloor = 1e-9;

struct GaussianNB {
    // Index 0 holds the MGB class, index 1 Other.
    std::array<double, 2> prior{};
    std::array<std::array<double, kNumCoeffs>, 2> mean{};
    std::array<std::array<double, kNumCoeffs>, 2> variance{};

    bool operator==(const GaussianNB&) const = default;
};

/// Per class: prior = count/n, per-attribute mean and population variance
/// floored at kVarianceFloor. Requires both classes present.
GaussianNB train_gnb(const LabeledDataset& data);

/// Log of prior times the product of per-attribute normal densities.
double gnb_log_posterior(const GaussianNB& model, const Fingerprint& f, Label c);

/// Argmax of the two log posteriors; ties go to Other.
Label predict_gnb(const GaussianNB& model, const Fingerprint& f);

}  // namespace birdsong
