#include "birdsong/bayes.hpp"

#include <cmath>
#include <numbers>

namespace birdsong {
namespace {

std::size_t class_index(Label l) { return l == Label::Mgb ? 0 : 1; }

}  // namespace

GaussianNB train_gnb(const LabeledDataset& data) {
    if (data.size() == 0) throw EmptyDataset("train_gnb: empty dataset");
    if (!data.has_both_classes()) {
        throw SingleClassDataset("train_gnb: both classes must be present");
    }

    GaussianNB model;
    const std::array<std::size_t, 2> counts = {data.count(Label::Mgb), data.count(Label::Other)};
    for (const Fingerprint& f : data.examples()) {
        const std::size_t c = class_index(*f.label);
        for (std::size_t j = 0; j < kNumCoeffs; ++j) model.mean[c][j] += f.coeffs[j];
    }
    for (std::size_t c = 0; c < 2; ++c) {
        model.prior[c] = static_cast<double>(counts[c]) / static_cast<double>(data.size());
        for (std::size_t j = 0; j < kNumCoeffs; ++j) {
            model.mean[c][j] /= static_cast<double>(counts[c]);
        }
    }
    for (const Fingerprint& f : data.examples()) {
        const std::size_t c = class_index(*f.label);
        for (std::size_t j = 0; j < kNumCoeffs; ++j) {
            const double d = f.coeffs[j] - model.mean[c][j];
            model.variance[c][j] += d * d;
        }
    }
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t j = 0; j < kNumCoeffs; ++j) {
            model.variance[c][j] =
                std::max(model.variance[c][j] / static_cast<double>(counts[c]), kVarianceFloor);
        }
    }
    return model;
}

double gnb_log_posterior(const GaussianNB& model, const Fingerprint& f, Label c) {
    const std::size_t ci = class_index(c);
    double lp = std::log(model.prior[ci]);
    for (std::size_t j = 0; j < kNumCoeffs; ++j) {
        const double var = model.variance[ci][j];
        const double d = f.coeffs[j] - model.mean[ci][j];
        lp += -0.5 * std::log(2.0 * std::numbers::pi * var) - (d * d) / (2.0 * var);
    }
    return lp;
}

Label predict_gnb(const GaussianNB& model, const Fingerprint& f) {
    const double mgb = gnb_log_posterior(model, f, Label::Mgb);
    const double other = gnb_log_posterior(model, f, Label::Other);
    return mgb > other ? Label::Mgb : Label::Other;
}

}  // namespace birdsong
