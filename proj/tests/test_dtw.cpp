#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "birdsong/dtw.hpp"
#include "birdsong/types.hpp"
#include "reference.hpp"

using namespace birdsong;
using birdsong::testing::brute_force_dtw;
using birdsong::testing::fp;
using birdsong::testing::make_dataset;

namespace {

bool path_is_valid(const DtwResult& r, std::size_t n, std::size_t m) {
    if (r.path.empty()) return false;
    if (r.path.front() != std::pair<std::size_t, std::size_t>{0, 0}) return false;
    if (r.path.back() != std::pair<std::size_t, std::size_t>{n - 1, m - 1}) return false;
    for (std::size_t k = 1; k < r.path.size(); ++k) {
        const std::size_t di = r.path[k].first - r.path[k - 1].first;
        const std::size_t dj = r.path[k].second - r.path[k - 1].second;
        if (di > 1 || dj > 1 || (di == 0 && dj == 0)) return false;
    }
    return true;
}

double path_cost(const DtwResult& r, const std::vector<double>& a, const std::vector<double>& b) {
    double c = 0.0;
    for (const auto& [i, j] : r.path) c += std::abs(a[i] - b[j]);
    return c;
}

}  // namespace

TEST_CASE("dtw matches exhaustive path enumeration on random short pairs") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        const std::size_t m = 1 + rng() % 6;
        std::vector<double> a(n), b(m);
        for (auto& v : a) v = static_cast<double>(rng() % 10);
        for (auto& v : b) v = static_cast<double>(rng() % 10);

        const DtwResult got = dtw_distance(a, b);
        CHECK(got.distance == brute_force_dtw(a, b));
        CHECK(path_is_valid(got, n, m));
        CHECK(path_cost(got, a, b) == got.distance);
    }
}

TEST_CASE("dtw distance is symmetric") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(1 + rng() % 8), b(1 + rng() % 8);
        for (auto& v : a) v = static_cast<double>(rng() % 20) / 3.0;
        for (auto& v : b) v = static_cast<double>(rng() % 20) / 3.0;
        CHECK(dtw_distance(a, b).distance == dtw_distance(b, a).distance);
    }
}

TEST_CASE("dtw hand-worked cases") {
    SUBCASE("identical sequences align on the diagonal at zero cost") {
        const std::vector<double> a{1, 2, 3};
        const DtwResult r = dtw_distance(a, a);
        CHECK(r.distance == 0.0);
        REQUIRE(r.path.size() == 3);
        CHECK(r.path[0] == std::pair<std::size_t, std::size_t>{0, 0});
        CHECK(r.path[1] == std::pair<std::size_t, std::size_t>{1, 1});
        CHECK(r.path[2] == std::pair<std::size_t, std::size_t>{2, 2});
    }
    SUBCASE("singletons") {
        CHECK(dtw_distance(std::vector<double>{0}, std::vector<double>{5}).distance == 5.0);
    }
    SUBCASE("forced expansion") {
        const std::vector<double> a{0, 0};
        const std::vector<double> b{1};
        const DtwResult r = dtw_distance(a, b);
        CHECK(r.distance == 2.0);
        REQUIRE(r.path.size() == 2);
        CHECK(r.path[1] == std::pair<std::size_t, std::size_t>{1, 0});
    }
    SUBCASE("empty input throws") {
        CHECK_THROWS_AS(dtw_distance(std::vector<double>{}, std::vector<double>{1}), EmptyInput);
        CHECK_THROWS_AS(dtw_distance(std::vector<double>{1}, std::vector<double>{}), EmptyInput);
    }
}

TEST_CASE("dtw path tie-breaking prefers diagonal, then the smaller i step") {
    SUBCASE("all-zero costs collapse to the diagonal first") {
        const std::vector<double> a{0, 0};
        const std::vector<double> b{0, 0, 0};
        const DtwResult r = dtw_distance(a, b);
        CHECK(r.distance == 0.0);
        const std::vector<std::pair<std::size_t, std::size_t>> want{{0, 0}, {0, 1}, {1, 2}};
        CHECK(r.path == want);
    }
    SUBCASE("transposed case") {
        const std::vector<double> a{0, 0, 0};
        const std::vector<double> b{0, 0};
        const DtwResult r = dtw_distance(a, b);
        const std::vector<std::pair<std::size_t, std::size_t>> want{{0, 0}, {1, 0}, {2, 1}};
        CHECK(r.path == want);
    }
    SUBCASE("left/up tie resolves to the (0,+1) predecessor") {
        // At the corner cell the diagonal predecessor costs 20 while both the
        // left and up predecessors cost 10, so the tie rule picks (2,1).
        const std::vector<double> a{0, 10, 0};
        const std::vector<double> b{10, 0, 10};
        const DtwResult r = dtw_distance(a, b);
        CHECK(r.distance == 20.0);
        const std::vector<std::pair<std::size_t, std::size_t>> want{
            {0, 0}, {1, 0}, {2, 1}, {2, 2}};
        CHECK(r.path == want);
    }
}

TEST_CASE("reference fingerprint is the element-wise mean of the positives") {
    const std::vector<Fingerprint> pos{fp({2, 4}, Label::Mgb, "a"), fp({4, 8}, Label::Mgb, "b")};
    const Fingerprint ref = reference_fingerprint(pos);
    CHECK(ref.coeffs[0] == 3.0);
    CHECK(ref.coeffs[1] == 6.0);
    CHECK(ref.coeffs[2] == 0.0);
    CHECK(ref.label == Label::Mgb);
    CHECK_THROWS_AS(reference_fingerprint({}), EmptyInput);
}

TEST_CASE("classification threshold is strict: distance equal to beta is Other") {
    const Fingerprint ref = fp({0}, Label::Mgb);
    const Fingerprint two_away = fp({2});
    CHECK(classify_by_threshold(two_away, ref, 2.0) == Label::Other);
    CHECK(classify_by_threshold(two_away, ref, 2.0000001) == Label::Mgb);
    CHECK(classify_by_threshold(ref, ref, 0.0) == Label::Other);  // distance 0 is not < 0
    CHECK_THROWS_AS(classify_by_threshold(two_away, ref, -1.0), std::invalid_argument);
}

TEST_CASE("sweep curves from precomputed distances") {
    const std::vector<Label> labels{Label::Mgb, Label::Mgb, Label::Other, Label::Other};
    const std::vector<double> betas{0, 2, 4, 6, 10};

    SUBCASE("single-point optimal band") {
        const std::vector<double> dist{1, 3, 5, 9};
        const SweepReport rep = sweep_from_distances(labels, dist, betas);
        CHECK(rep.n_mgb == 2);
        CHECK(rep.n_other == 2);
        CHECK(rep.tp_rate == std::vector<double>{0, 0.5, 1, 1, 1});
        CHECK(rep.tn_rate == std::vector<double>{1, 1, 1, 0.5, 0});
        CHECK(rep.w_avg == std::vector<double>{0.5, 0.75, 1.0, 0.75, 0.5});
        REQUIRE(rep.optimal_band.has_value());
        CHECK(rep.optimal_band->beta_lo == 4.0);
        CHECK(rep.optimal_band->beta_hi == 4.0);
    }
    SUBCASE("multi-point optimal band spans the contiguous run") {
        const std::vector<double> dist{1, 3, 7, 9};
        const SweepReport rep = sweep_from_distances(labels, dist, betas);
        CHECK(rep.w_avg == std::vector<double>{0.5, 0.75, 1.0, 1.0, 0.5});
        REQUIRE(rep.optimal_band.has_value());
        CHECK(rep.optimal_band->beta_lo == 4.0);
        CHECK(rep.optimal_band->beta_hi == 6.0);
    }
    SUBCASE("no band when the classes overlap") {
        const std::vector<double> dist{1, 6, 5, 9};  // one MGB beyond one Other
        const SweepReport rep = sweep_from_distances(labels, dist, betas);
        CHECK_FALSE(rep.optimal_band.has_value());
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(sweep_from_distances(labels, std::vector<double>{1, 2}, betas),
                        std::invalid_argument);
        CHECK_THROWS_AS(sweep_from_distances(labels, std::vector<double>{1, 2, 3, 4},
                                             std::vector<double>{}),
                        std::invalid_argument);
        CHECK_THROWS_AS(sweep_from_distances(labels, std::vector<double>{1, 2, 3, 4},
                                             std::vector<double>{3, 1}),
                        std::invalid_argument);
    }
}

TEST_CASE("sweep rate curves are monotone and recompose into w_avg") {
    std::mt19937_64 rng(21);
    std::vector<Label> labels;
    std::vector<double> dist;
    for (int i = 0; i < 40; ++i) {
        labels.push_back(i % 3 == 0 ? Label::Mgb : Label::Other);
        dist.push_back(static_cast<double>(rng() % 1000) / 10.0);
    }
    const std::vector<double> betas = default_beta_grid(dist, 64);
    const SweepReport rep = sweep_from_distances(labels, dist, betas);
    for (std::size_t i = 1; i < betas.size(); ++i) {
        CHECK(rep.tp_rate[i] >= rep.tp_rate[i - 1]);
        CHECK(rep.tn_rate[i] <= rep.tn_rate[i - 1]);
    }
    const double n = static_cast<double>(rep.n_mgb + rep.n_other);
    for (std::size_t i = 0; i < betas.size(); ++i) {
        const double recomposed =
            (static_cast<double>(rep.n_mgb) * rep.tp_rate[i] +
             static_cast<double>(rep.n_other) * rep.tn_rate[i]) /
            n;
        CHECK(std::abs(rep.w_avg[i] - recomposed) <= 1e-9);
    }
}

TEST_CASE("threshold sweep over a labeled dataset") {
    // Values sit in C01 only, so the DTW distance to the reference reduces to
    // the absolute difference against the MGB mean (here 2.0).
    const std::vector<Fingerprint> positives{fp({1}, Label::Mgb, "m1"), fp({3}, Label::Mgb, "m2")};
    LabeledDataset data = make_dataset(positives);
    data.append(fp({10}, Label::Other, "o1"));
    data.append(fp({12}, Label::Other, "o2"));
    const Fingerprint ref = reference_fingerprint(positives);
    const std::vector<double> betas{0.5, 1.5, 5.0, 9.0};
    const SweepReport rep = threshold_sweep(data, ref, betas);
    CHECK(rep.tp_rate == std::vector<double>{0, 1, 1, 1});
    CHECK(rep.tn_rate == std::vector<double>{1, 1, 1, 0.5});
    REQUIRE(rep.optimal_band.has_value());
    CHECK(rep.optimal_band->beta_lo == 1.5);
    CHECK(rep.optimal_band->beta_hi == 5.0);

    const LabeledDataset mgb_only =
        make_dataset({fp({1}, Label::Mgb, "m1"), fp({3}, Label::Mgb, "m2")});
    CHECK_THROWS_AS(threshold_sweep(mgb_only, ref, betas), SingleClassDataset);
    CHECK_THROWS_WITH(threshold_sweep(mgb_only, ref, betas),
                      doctest::Contains("missing Other"));
}

TEST_CASE("default beta grid spans 0 to 1.1x the largest distance") {
    const std::vector<double> dist{1, 9};
    const std::vector<double> grid = default_beta_grid(dist, 5);
    REQUIRE(grid.size() == 5);
    CHECK(grid[0] == 0.0);
    CHECK(grid[4] == doctest::Approx(9.9).epsilon(1e-12));
    CHECK(grid[2] == doctest::Approx(4.95).epsilon(1e-12));

    const std::vector<double> single = default_beta_grid(dist, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == doctest::Approx(9.9).epsilon(1e-12));

    CHECK_THROWS_AS(default_beta_grid(dist, 0), std::invalid_argument);
}

TEST_CASE("sweep CSV format") {
    SweepReport rep;
    rep.thresholds = {0, 2};
    rep.tp_rate = {0, 0.5};
    rep.tn_rate = {1, 1};
    rep.w_avg = {0.5, 0.75};
    CHECK(sweep_csv(rep) == "beta,tp,tn,wavg\n0,0,1,0.5\n2,0.5,1,0.75\n");
}
