#include "birdsong/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "birdsong/rng.hpp"

namespace birdsong {

namespace {

double squared_distance(const Fingerprint& a, const Fingerprint& b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < kNumCoeffs; ++j) {
        double d = a.coeffs[j] - b.coeffs[j];
        acc += d * d;
    }
    return acc;
}

}  // namespace

LabeledDataset smote(const LabeledDataset& data, Label minority, const SmoteParams& p) {
    std::vector<std::size_t> minority_idx;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (*data.examples()[i].label == minority) minority_idx.push_back(i);

    const std::size_t n_min = minority_idx.size();
    if (n_min < 2)
        throw TooFewMinority("smote needs at least 2 minority examples, have " +
                             std::to_string(n_min));
    if (p.k_neighbors < 1 || p.k_neighbors > n_min - 1)
        throw BadK("k_neighbors must be in [1, " + std::to_string(n_min - 1) + "], got " +
                   std::to_string(p.k_neighbors));

    // exact k-NN per minority sample, ties broken by index
    std::vector<std::vector<std::size_t>> neighbors(n_min);
    for (std::size_t a = 0; a < n_min; ++a) {
        std::vector<std::pair<double, std::size_t>> dist;
        dist.reserve(n_min - 1);
        for (std::size_t b = 0; b < n_min; ++b) {
            if (b == a) continue;
            dist.emplace_back(
                squared_distance(data.examples()[minority_idx[a]], data.examples()[minority_idx[b]]),
                b);
        }
        std::sort(dist.begin(), dist.end());
        neighbors[a].reserve(p.k_neighbors);
        for (std::size_t k = 0; k < p.k_neighbors; ++k) neighbors[a].push_back(dist[k].second);
    }

    LabeledDataset out = data;
    std::mt19937_64 rng(p.seed);
    for (std::size_t s = 0; s < p.n_synthetic; ++s) {
        std::size_t seed_pos = s % n_min;
        const Fingerprint& base = data.examples()[minority_idx[seed_pos]];
        std::size_t pick = uniform_index(rng, p.k_neighbors);
        const Fingerprint& nbr = data.examples()[minority_idx[neighbors[seed_pos][pick]]];
        double u = uniform01(rng);

        Fingerprint synth;
        synth.label = minority;
        synth.source_id = "synthetic:" + std::to_string(s);
        for (std::size_t j = 0; j < kNumCoeffs; ++j)
            synth.coeffs[j] = base.coeffs[j] + u * (nbr.coeffs[j] - base.coeffs[j]);
        out.append(std::move(synth));
    }
    return out;
}

std::size_t extended_synthetic_count(std::size_t minority_count, std::size_t majority_count) {
    if (majority_count == 0 || majority_count - 1 <= minority_count) return 0;
    return (majority_count - 1) - minority_count;
}

LabeledDataset extended_replicate(const LabeledDataset& data, std::size_t r,
                                  std::uint64_t base_seed, std::size_t k_neighbors) {
    if (!data.has_both_classes())
        throw SingleClassDataset("extended datasets need both classes present");

    std::size_t n_mgb = data.count(Label::Mgb);
    std::size_t n_other = data.count(Label::Other);
    Label minority = n_mgb <= n_other ? Label::Mgb : Label::Other;

    SmoteParams p;
    p.k_neighbors = k_neighbors;
    p.n_synthetic = extended_synthetic_count(std::min(n_mgb, n_other), std::max(n_mgb, n_other));
    p.seed = base_seed + r;
    return smote(data, minority, p);
}

std::vector<LabeledDataset> make_extended_datasets(const LabeledDataset& data,
                                                   std::size_t replicates, std::uint64_t base_seed,
                                                   std::size_t k_neighbors) {
    if (replicates < 1) throw std::invalid_argument("need at least one replicate");

    std::vector<LabeledDataset> out;
    out.reserve(replicates);
    for (std::size_t r = 0; r < replicates; ++r) {
        out.push_back(extended_replicate(data, r, base_seed, k_neighbors));
    }
    return out;
}

}  // namespace birdsong
