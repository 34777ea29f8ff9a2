#include "birdsong/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "birdsong/rng.hpp"

namespace birdsong {
namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void forward(const MlpWeights& w, const double* x, double* hidden, double* out) {
    const std::size_t h = w.hidden;
    for (std::size_t u = 0; u < h; ++u) {
        double z = w.b1[u];
        const double* row = &w.w1[u * kNumCoeffs];
        for (std::size_t j = 0; j < kNumCoeffs; ++j) z += row[j] * x[j];
        hidden[u] = sigmoid(z);
    }
    for (std::size_t k = 0; k < 2; ++k) {
        double z = w.b2[k];
        const double* row = &w.w2[k * h];
        for (std::size_t u = 0; u < h; ++u) z += row[u] * hidden[u];
        out[k] = sigmoid(z);
    }
}

std::array<double, 2> one_hot(Label target) {
    return target == Label::Mgb ? std::array<double, 2>{1.0, 0.0}
                                : std::array<double, 2>{0.0, 1.0};
}

double loss_of(const double* out, const std::array<double, 2>& t, MlpLoss loss) {
    if (loss == MlpLoss::SquaredError) {
        double s = 0.0;
        for (std::size_t k = 0; k < 2; ++k) {
            const double d = out[k] - t[k];
            s += d * d;
        }
        return 0.5 * s;
    }
    double s = 0.0;
    for (std::size_t k = 0; k < 2; ++k) {
        s -= t[k] * std::log(out[k]) + (1.0 - t[k]) * std::log(1.0 - out[k]);
    }
    return s;
}

/// Backward pass; writes the example's gradient into `g` (same shape as `w`,
/// preallocated and overwritten) and returns the example's loss.
double backward(const MlpWeights& w, const double* x, Label target, MlpLoss loss,
                const double* hidden, const double* out, MlpWeights& g) {
    const std::size_t h = w.hidden;
    const std::array<double, 2> t = one_hot(target);

    std::array<double, 2> delta_out;
    for (std::size_t k = 0; k < 2; ++k) {
        const double err = out[k] - t[k];
        delta_out[k] = loss == MlpLoss::SquaredError ? err * out[k] * (1.0 - out[k]) : err;
    }
    for (std::size_t k = 0; k < 2; ++k) {
        double* row = &g.w2[k * h];
        for (std::size_t u = 0; u < h; ++u) row[u] = delta_out[k] * hidden[u];
        g.b2[k] = delta_out[k];
    }
    for (std::size_t u = 0; u < h; ++u) {
        double back = 0.0;
        for (std::size_t k = 0; k < 2; ++k) back += delta_out[k] * w.w2[k * h + u];
        const double delta_h = back * hidden[u] * (1.0 - hidden[u]);
        double* row = &g.w1[u * kNumCoeffs];
        for (std::size_t j = 0; j < kNumCoeffs; ++j) row[j] = delta_h * x[j];
        g.b1[u] = delta_h;
    }
    return loss_of(out, t, loss);
}

MlpWeights make_weights(std::size_t hidden) {
    MlpWeights w;
    w.hidden = hidden;
    w.w1.assign(hidden * kNumCoeffs, 0.0);
    w.b1.assign(hidden, 0.0);
    w.w2.assign(2 * hidden, 0.0);
    w.b2.assign(2, 0.0);
    return w;
}

void check_input(const MlpWeights& w, std::span<const double> x) {
    if (w.hidden == 0) throw std::invalid_argument("mlp: hidden must be >= 1");
    if (x.size() != kNumCoeffs) throw std::invalid_argument("mlp: input must have 20 values");
}

}  // namespace

MlpModel train_mlp(const LabeledDataset& data, const MlpParams& params) {
    if (data.size() == 0) throw EmptyDataset("train_mlp: empty dataset");
    if (params.hidden == 0) throw std::invalid_argument("train_mlp: hidden must be >= 1");
    if (!(params.learning_rate > 0.0)) {
        throw std::invalid_argument("train_mlp: learning_rate must be > 0");
    }
    if (params.epochs == 0) throw std::invalid_argument("train_mlp: epochs must be >= 1");

    MlpModel model;
    model.loss = params.loss;
    model.feat_min.fill(std::numeric_limits<double>::infinity());
    model.feat_max.fill(-std::numeric_limits<double>::infinity());
    for (const Fingerprint& f : data.examples()) {
        for (std::size_t j = 0; j < kNumCoeffs; ++j) {
            model.feat_min[j] = std::min(model.feat_min[j], f.coeffs[j]);
            model.feat_max[j] = std::max(model.feat_max[j], f.coeffs[j]);
        }
    }

    const std::size_t n = data.size();
    std::vector<double> inputs(n * kNumCoeffs);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < kNumCoeffs; ++j) {
            const double range = model.feat_max[j] - model.feat_min[j];
            inputs[i * kNumCoeffs + j] =
                range > 0.0 ? (data.examples()[i].coeffs[j] - model.feat_min[j]) / range : 0.0;
        }
    }

    std::mt19937_64 rng(params.seed);
    MlpWeights& w = model.weights;
    w = make_weights(params.hidden);
    for (double& v : w.w1) v = uniform01(rng) - 0.5;
    for (double& v : w.b1) v = uniform01(rng) - 0.5;
    for (double& v : w.w2) v = uniform01(rng) - 0.5;
    for (double& v : w.b2) v = uniform01(rng) - 0.5;

    MlpWeights grad = make_weights(params.hidden);
    MlpWeights step = make_weights(params.hidden);
    std::vector<double> hidden(params.hidden);
    std::array<double, 2> out;

    const auto update = [&](std::vector<double>& weights, const std::vector<double>& g,
                            std::vector<double>& prev) {
        for (std::size_t i = 0; i < weights.size(); ++i) {
            prev[i] = -params.learning_rate * g[i] + params.momentum * prev[i];
            weights[i] += prev[i];
        }
    };

    for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
        double epoch_loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double* x = &inputs[i * kNumCoeffs];
            forward(w, x, hidden.data(), out.data());
            epoch_loss += backward(w, x, *data.examples()[i].label, params.loss, hidden.data(),
                                   out.data(), grad);
            update(w.w1, grad.w1, step.w1);
            update(w.b1, grad.b1, step.b1);
            update(w.w2, grad.w2, step.w2);
            update(w.b2, grad.b2, step.b2);
        }
        if (!std::isfinite(epoch_loss)) {
            throw NonFiniteLoss("train_mlp: non-finite loss at epoch " + std::to_string(epoch) +
                                "; lower the learning rate");
        }
    }
    return model;
}

Label predict_mlp(const MlpModel& model, const Fingerprint& f) {
    std::array<double, kNumCoeffs> x{};
    for (std::size_t j = 0; j < kNumCoeffs; ++j) {
        const double range = model.feat_max[j] - model.feat_min[j];
        x[j] = range > 0.0 ? (f.coeffs[j] - model.feat_min[j]) / range : 0.0;
    }
    std::vector<double> hidden(model.weights.hidden);
    std::array<double, 2> out;
    forward(model.weights, x.data(), hidden.data(), out.data());
    return out[0] > out[1] ? Label::Mgb : Label::Other;
}

double mlp_example_loss(const MlpWeights& w, std::span<const double> x, Label target,
                        MlpLoss loss) {
    check_input(w, x);
    std::vector<double> hidden(w.hidden);
    std::array<double, 2> out;
    forward(w, x.data(), hidden.data(), out.data());
    return loss_of(out.data(), one_hot(target), loss);
}

MlpWeights mlp_example_gradient(const MlpWeights& w, std::span<const double> x, Label target,
                                MlpLoss loss) {
    check_input(w, x);
    std::vector<double> hidden(w.hidden);
    std::array<double, 2> out;
    forward(w, x.data(), hidden.data(), out.data());
    MlpWeights g = make_weights(w.hidden);
    backward(w, x.data(), target, loss, hidden.data(), out.data(), g);
    return g;
}

}  // namespace birdsong
