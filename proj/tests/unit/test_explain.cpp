#include "codetect/explain/importance.hpp"
#include "codetect/random.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <numeric>

using namespace codetect;

namespace {

// Column 0 decides the label (x0 > 0 is llm); column 1 is noise, column 2
// constant. `copy` appends a duplicate of column 0.
FeatureMatrix separable(std::size_t n, std::uint64_t seed, bool copy = false) {
    Rng rng(seed);
    std::vector<std::string> names{"signal", "noise", "constant"};
    if (copy) names.emplace_back("signal_copy");
    FeatureMatrix m(names, n);
    for (std::size_t r = 0; r < n; ++r) {
        const double x = (r % 2 ? 1 : -1) * (0.1 + uniform01(rng));
        m.at(r, 0) = x;
        m.at(r, 1) = standard_normal(rng);
        m.at(r, 2) = 3.0;
        if (copy) m.at(r, 3) = x;
        m.ids[r] = "r" + std::to_string(r);
        m.labels[r] = x > 0 ? "llm" : "human";
    }
    return m;
}

// Label depends on column 0 through a noisy logistic link, so trees keep
// splitting on both columns.
FeatureMatrix noisy(std::size_t n, std::uint64_t seed, bool copy) {
    Rng rng(seed);
    std::vector<std::string> names{"a", "b"};
    if (copy) names.emplace_back("a_copy");
    FeatureMatrix m(names, n);
    for (std::size_t r = 0; r < n; ++r) {
        const double a = standard_normal(rng), b = standard_normal(rng);
        m.at(r, 0) = a;
        m.at(r, 1) = b;
        if (copy) m.at(r, 2) = a;
        const bool llm = uniform01(rng) < 1 / (1 + std::exp(-(2 * a + 0.5 * b)));
        m.ids[r] = "r" + std::to_string(r);
        m.labels[r] = llm ? "llm" : "human";
    }
    return m;
}

TrainedModel gbdt(const FeatureMatrix& m, int trees = 30, int depth = 3) {
    GbdtConfig cfg;
    cfg.trees = trees;
    cfg.max_depth = depth;
    cfg.min_samples_leaf = 5;
    return train_gbdt(m, LabelSpace::binary(), cfg);
}

double score_of(const ImportanceReport& r, const std::string& name) {
    for (const auto& [n, v] : r.ranked) {
        if (n == name) return v;
    }
    throw std::runtime_error("no feature " + name);
}

}  // namespace

TEST_SUITE("explain") {

TEST_CASE("a single stump puts all gain on its feature") {
    const auto m = separable(200, 1);
    const auto r = gain_importance(gbdt(m, 1, 1));
    CHECK(score_of(r, "signal") == 1.0);
    CHECK(score_of(r, "noise") == 0.0);
    CHECK(score_of(r, "constant") == 0.0);
    CHECK(r.ranked.front().first == "signal");
    CHECK(r.total_gain > 0);
}

TEST_CASE("gain importances are a distribution") {
    const auto r = gain_importance(gbdt(noisy(1000, 2, false), 50, 3));
    double sum = 0;
    for (double v : r.scores) {
        CHECK(v >= 0);
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.ranked.front().first == "a");
}

TEST_CASE("a duplicated column shares the original's gain") {
    const auto single = gain_importance(gbdt(noisy(2000, 3, false), 50, 3));
    const auto dup = gain_importance(gbdt(noisy(2000, 3, true), 50, 3));
    const double pair = score_of(dup, "a") + score_of(dup, "a_copy");
    CHECK(pair == doctest::Approx(score_of(single, "a")).epsilon(0.05));
}

TEST_CASE("linear models have no split gain") {
    const auto m = separable(200, 4);
    const auto lin = train_linear(m, LabelSpace::binary(), LinearConfig{});
    CHECK_THROWS_WITH(gain_importance(lin), doctest::Contains("use permutation"));
    const auto r = permutation_importance(lin, m, ImportanceMetric::accuracy, 3, 1);
    CHECK(score_of(r, "signal") > 0.3);
    CHECK(score_of(r, "constant") == 0.0);
}

TEST_CASE("permutation importance of the only predictive feature") {
    // Once the signal is shuffled, predictions are independent of the
    // balanced gold labels: chance accuracy is 1/2.
    const auto m = separable(4000, 5);
    const auto model = gbdt(m, 20, 2);
    const auto r = permutation_importance(model, m, ImportanceMetric::accuracy, 5, 11);
    CHECK(r.baseline >= 0.99);
    CHECK(score_of(r, "signal") == doctest::Approx(r.baseline - 0.5).epsilon(0.04));
    CHECK(score_of(r, "constant") == 0.0);
    CHECK(r.metric == ImportanceMetric::accuracy);
    CHECK(r.repeats == 5);
    CHECK(r.seed == 11);
}

TEST_CASE("features unused by every tree score exactly zero") {
    const auto m = separable(500, 6);
    const auto model = gbdt(m, 1, 1);
    const auto r = permutation_importance(model, m, ImportanceMetric::macro_f1, 5, 2);
    CHECK(score_of(r, "noise") == 0.0);
    CHECK(score_of(r, "constant") == 0.0);
    CHECK(score_of(r, "signal") > 0.4);
}

TEST_CASE("permutation importance is deterministic") {
    const auto m = noisy(600, 7, false);
    const auto model = gbdt(m);
    const auto a = permutation_importance(model, m, ImportanceMetric::macro_f1, 4, 99, Exec::parallel);
    const auto b = permutation_importance(model, m, ImportanceMetric::macro_f1, 4, 99, Exec::serial);
    CHECK(a.scores == b.scores);
    CHECK(a.to_json() == b.to_json());
    const auto c = permutation_importance(model, m, ImportanceMetric::macro_f1, 4, 100);
    CHECK(a.scores != c.scores);
}

TEST_CASE("more repeats give steadier scores") {
    const auto m = noisy(300, 8, false);
    const auto model = gbdt(m);
    auto variance = [&](int repeats) {
        std::vector<double> v;
        for (std::uint64_t s = 0; s < 10; ++s) {
            v.push_back(permutation_importance(model, m, ImportanceMetric::macro_f1, repeats, s).scores[0]);
        }
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / 10;
        double ss = 0;
        for (double x : v) ss += (x - mean) * (x - mean);
        return ss / 10;
    };
    CHECK(variance(5) < variance(1));
}

TEST_CASE("report serialization") {
    const auto m = separable(200, 9);
    const auto r = gain_importance(gbdt(m, 1, 1));
    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["method"] == "gain");
    CHECK(r.to_csv().rfind("feature,score\nsignal,1", 0) == 0);
    const auto p = permutation_importance(gbdt(m, 1, 1), m, ImportanceMetric::macro_f1, 2, 5);
    const auto pj = nlohmann::json::parse(p.to_json());
    CHECK(pj["method"] == "permutation");
    CHECK(pj["metric"] == "macro_f1");
    CHECK(pj["seed"] == 5);
}

}
