#include "codetect/models/gbdt.hpp"
#include "codetect/models/label_space.hpp"
#include "codetect/models/linear.hpp"
#include "codetect/models/model.hpp"
#include "codetect/random.hpp"
#include "datasets.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <limits>
#include <numeric>

using namespace codetect;
using namespace codetect::data;

namespace {

GbdtConfig small_gbdt(int trees = 100) {
    GbdtConfig cfg;
    cfg.trees = trees;
    cfg.max_depth = 4;
    cfg.min_samples_leaf = 5;
    cfg.seed = 5;
    return cfg;
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("label spaces") {
    CHECK(LabelSpace::binary().labels() == std::vector<std::string>{"human", "llm"});
    CHECK(LabelSpace::ternary().labels() == std::vector<std::string>{"human", "llm", "hybrid"});
    CHECK(LabelSpace::attribution().labels() ==
          std::vector<std::string>{"human", "gpt4o", "codellama", "llama31", "codeqwen15", "nxcode"});
    CHECK(LabelSpace::attribution().size() == 6);
    CHECK(parse_task("multiclass") == Task::attribution);
    CHECK_THROWS(LabelSpace(Task::binary, {"a", "a"}));
    CHECK_THROWS(LabelSpace(Task::binary, {"a"}));
    CodeSample hybrid;
    hybrid.label = Label::hybrid;
    hybrid.generator = Generator::llama31;
    CHECK(LabelSpace::binary().gold_label(hybrid) == "llm");
    CHECK(LabelSpace::ternary().gold_label(hybrid) == "hybrid");
    CHECK(LabelSpace::attribution().gold_label(hybrid) == "llama31");
    CHECK_THROWS_WITH(LabelSpace::binary().index("robot"), doctest::Contains("robot"));
}

TEST_CASE("linear model separates blobs") {
    const auto m = blobs(400, 1);
    LinearConfig cfg;
    cfg.seed = 3;
    const auto model = train_linear(m, LabelSpace::binary(), cfg);
    CHECK(accuracy(model, m) >= 0.99);
    const auto serial = train_linear(m, LabelSpace::binary(), cfg, Exec::serial);
    CHECK(model_digest(serial) == model_digest(model));
}

TEST_CASE("gbdt fits xor") {
    const auto m = xor_data(1000, 2);
    const auto model = train_gbdt(m, LabelSpace::binary(), small_gbdt());
    CHECK(accuracy(model, m) >= 0.99);
}

TEST_CASE("linear model with random Fourier features fits xor") {
    const auto m = xor_data(600, 4);
    LinearConfig cfg;
    cfg.rff_dims = 300;
    cfg.epochs = 40;
    cfg.learning_rate = 0.05;
    cfg.seed = 9;
    const auto model = train_linear(m, LabelSpace::binary(), cfg);
    CHECK(accuracy(model, m) >= 0.9);
    const auto back = model_from_json(model_to_json(model));
    const auto a = model.predict(m), b = back.predict(m);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].scores == b[i].scores);
}

TEST_CASE("gbdt training loss never increases over 2000 trees") {
    const auto m = noisy(1000, 3);
    GbdtConfig cfg;  // defaults: 2000 trees, learning rate 0.1, depth 6
    cfg.seed = 1;
    const auto model = train_gbdt(m, LabelSpace::binary(), cfg);
    const auto& loss = std::get<GbdtModel>(model.params).boosters.at(0).training_loss;
    REQUIRE(loss.size() == 2001);
    for (std::size_t t = 1; t < loss.size(); ++t) CHECK(loss[t] <= loss[t - 1]);
    CHECK(loss.back() < loss.front() * 0.5);
}

TEST_CASE("a depth-one tree picks the enumerated best stump") {
    Rng rng(12);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (int i = 0; i < 60; ++i) {
        std::vector<double> x(3);
        for (auto& v : x) v = std::round(uniform01(rng) * 100) / 100;
        rows.push_back(x);
        labels.emplace_back(x[1] + 0.3 * uniform01(rng) > 0.6 ? "llm" : "human");
    }
    const auto m = matrix(rows, labels);
    GbdtConfig cfg;
    cfg.trees = 1;
    cfg.max_depth = 1;
    cfg.min_samples_leaf = 1;
    cfg.l2 = 0.7;
    cfg.learning_rate = 0.1;
    const auto model = train_gbdt(m, LabelSpace::binary(), cfg);
    const auto& booster = std::get<GbdtModel>(model.params).boosters.at(0);
    const auto& root = booster.trees.at(0).nodes.at(0);

    // Oracle: gradients at the prior log-odds, every midpoint of every feature.
    const auto y = encode_labels(m, LabelSpace::binary());
    const double p = std::accumulate(y.begin(), y.end(), 0.0) / 60.0;
    std::vector<double> g(60), h(60);
    for (int i = 0; i < 60; ++i) g[i] = p - static_cast<double>(y[i]), h[i] = p * (1 - p);
    auto score = [&](double G, double H) { return G * G / (H + cfg.l2); };
    double G = 0, H = 0;
    for (int i = 0; i < 60; ++i) G += g[i], H += h[i];
    double best_gain = 0, best_t = 0;
    int best_f = -1;
    double best_left = 0, best_right = 0;
    for (int f = 0; f < 3; ++f) {
        std::vector<double> vals;
        for (const auto& r : rows) vals.push_back(r[f]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
            const double t = (vals[k] + vals[k + 1]) / 2;
            double GL = 0, HL = 0;
            for (int i = 0; i < 60; ++i) {
                if (rows[i][f] <= t) GL += g[i], HL += h[i];
            }
            const double gain = 0.5 * (score(GL, HL) + score(G - GL, H - HL) - score(G, H));
            if (gain > best_gain + 1e-9) {
                best_gain = gain, best_f = f, best_t = t;
                best_left = -0.1 * GL / (HL + cfg.l2);
                best_right = -0.1 * (G - GL) / (H - HL + cfg.l2);
            }
        }
    }
    REQUIRE(best_f >= 0);
    CHECK(root.feature == best_f);
    CHECK(root.threshold == best_t);
    CHECK(root.gain == doctest::Approx(best_gain).epsilon(1e-6));
    const auto& nodes = booster.trees[0].nodes;
    CHECK(nodes.at(static_cast<std::size_t>(root.left)).value == doctest::Approx(best_left).epsilon(1e-6));
    CHECK(nodes.at(static_cast<std::size_t>(root.right)).value == doctest::Approx(best_right).epsilon(1e-6));
    CHECK(booster.base_score == doctest::Approx(std::log(p / (1 - p))));
}

TEST_CASE("tree prediction agrees with a naive walk") {
    RegressionTree t;
    // 0: f0 <= 1 ? 1 : 2 (missing left); 1: leaf -1; 2: f1 <= 5 ? 3 : 4 (missing right)
    t.nodes = {{0, 1.0, true, 1, 2, 0, 1, 10}, {-1, 0, true, -1, -1, -1.0, 0, 4},
               {1, 5.0, false, 3, 4, 0, 1, 6}, {-1, 0, true, -1, -1, 2.0, 0, 3},
               {-1, 0, true, -1, -1, 3.0, 0, 3}};
    auto naive = [](double a, double b) {
        if (std::isnan(a) || a <= 1.0) return -1.0;
        if (std::isnan(b)) return 3.0;
        return b <= 5.0 ? 2.0 : 3.0;
    };
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double a : {0.0, 1.0, 1.5, nan}) {
        for (double b : {4.0, 5.0, 6.0, nan}) {
            const std::vector<double> row{a, b};
            CHECK(t.predict(row) == naive(a, b));
        }
    }
}

TEST_CASE("gbdt is invariant to row order and thread count") {
    const auto m = noisy(300, 6);
    std::vector<std::size_t> perm(m.rows());
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(1);
    shuffle(std::span<std::size_t>(perm), rng);
    const auto shuffled = m.select_rows(perm);
    const auto cfg = small_gbdt(60);
    const auto a = std::get<GbdtModel>(train_gbdt(m, LabelSpace::binary(), cfg).params).to_json().dump();
    const auto b = std::get<GbdtModel>(train_gbdt(shuffled, LabelSpace::binary(), cfg).params).to_json().dump();
    const auto c = std::get<GbdtModel>(train_gbdt(m, LabelSpace::binary(), cfg, Exec::serial).params).to_json().dump();
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("subsampling is seeded") {
    const auto m = noisy(300, 7);
    auto cfg = small_gbdt(30);
    cfg.subsample = 0.5;
    const auto a = model_digest(train_gbdt(m, LabelSpace::binary(), cfg));
    CHECK(a == model_digest(train_gbdt(m, LabelSpace::binary(), cfg)));
    cfg.seed = 6;
    CHECK(a != model_digest(train_gbdt(m, LabelSpace::binary(), cfg)));
}

TEST_CASE("multiclass models produce distributions") {
    Rng rng(4);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    const std::vector<std::string> names{"human", "llm", "hybrid"};
    for (int i = 0; i < 300; ++i) {
        const int k = i % 3;
        rows.push_back({(k == 1 ? 5.0 : 0.0) + standard_normal(rng), (k == 2 ? 5.0 : 0.0) + standard_normal(rng)});
        labels.push_back(names[k]);
    }
    const auto m = matrix(rows, labels);
    const auto space = LabelSpace::ternary();
    for (const auto& model : {train_gbdt(m, space, small_gbdt(50)), train_linear(m, space, LinearConfig{})}) {
        CHECK(accuracy(model, m) > 0.9);
        for (const auto& p : model.predict(m)) {
            CHECK(std::accumulate(p.scores.begin(), p.scores.end(), 0.0) == doctest::Approx(1.0));
            CHECK(p.label == argmax_first(p.scores));
        }
    }
}

TEST_CASE("argmax ties go to the earlier label") {
    CHECK(argmax_first(std::vector<double>{0.5, 0.5}) == 0);
    CHECK(argmax_first(std::vector<double>{0.2, 0.4, 0.4}) == 1);
}

TEST_CASE("degenerate labels are rejected") {
    auto m = blobs(20, 2);
    std::fill(m.labels.begin(), m.labels.end(), "llm");
    CHECK_THROWS_WITH(train_gbdt(m, LabelSpace::binary(), small_gbdt()),
                      doctest::Contains("degenerate labels: training data has only the class 'llm'"));
    CHECK_THROWS_WITH(train_linear(m, LabelSpace::binary(), LinearConfig{}), doctest::Contains("degenerate labels"));
}

TEST_CASE("constant features give a prior-only linear model") {
    auto m = matrix(std::vector<std::vector<double>>(10, {1.0, 2.0}),
                    {"human", "llm", "llm", "llm", "human", "llm", "llm", "human", "llm", "llm"});
    const auto model = train_linear(m, LabelSpace::binary(), LinearConfig{});
    const auto& lin = std::get<LinearModel>(model.params);
    CHECK(lin.prior_only);
    CHECK(lin.scaler.dropped.size() == 2);
    const auto p = model.predict(m).front();
    CHECK(p.label == 1);
    CHECK(p.scores[1] == doctest::Approx(0.7));
}

TEST_CASE("model files round trip") {
    const auto m = noisy(200, 8);
    for (const auto& model : {train_gbdt(m, LabelSpace::binary(), small_gbdt(20)),
                              train_linear(m, LabelSpace::binary(), LinearConfig{})}) {
        const auto text = model_to_json(model);
        const auto back = model_from_json(text);
        CHECK(model_to_json(back) == text);
        const auto a = model.predict(m), b = back.predict(m);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].scores == b[i].scores);
    }
}

TEST_CASE("damaged and foreign model files are refused") {
    const auto m = noisy(100, 9);
    const auto text = model_to_json(train_gbdt(m, LabelSpace::binary(), small_gbdt(5)));
    CHECK_THROWS_WITH(model_from_json(text.substr(0, text.size() / 2)), doctest::Contains("corrupt model"));
    auto j = nlohmann::json::parse(text);
    j["format_version"] = 3;
    CHECK_THROWS_WITH(model_from_json(j.dump()),
                      doctest::Contains("unsupported model format version 3; this build reads versions 1 to 2"));
    j = nlohmann::json::parse(text);
    j["magic"] = "SOMETHING-ELSE";
    CHECK_THROWS_WITH(model_from_json(j.dump()), doctest::Contains("corrupt model"));
    j = nlohmann::json::parse(text);
    j["params"]["boosters"][0]["trees"][0][0][3] = 0;  // root points at itself
    CHECK_THROWS_WITH(model_from_json(j.dump()), doctest::Contains("corrupt model"));
    j = nlohmann::json::parse(text);
    j["feature_names"][0] = "renamed";
    CHECK_THROWS_WITH(model_from_json(j.dump()), doctest::Contains("corrupt model"));
    try {
        model_from_json("{");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::validation);
    }
}

TEST_CASE("format version 1 files migrate on load") {
    const auto m = noisy(100, 10);
    const auto model = train_gbdt(m, LabelSpace::binary(), small_gbdt(5));
    auto j = nlohmann::json::parse(model_to_json(model));
    j["format_version"] = 1;
    j["labels"] = j["label_space"]["labels"];
    for (const char* k : {"label_space", "feature_schema_hash", "feature_schema", "metadata"}) j.erase(k);
    const auto back = model_from_json(j.dump());
    REQUIRE(back.notes.size() == 1);
    CHECK(back.notes[0].find("migrated") != std::string::npos);
    CHECK(back.label_space.labels() == model.label_space.labels());
    CHECK(back.label_space.task() == model.label_space.task());
    CHECK(back.feature_schema_hash == model.feature_schema_hash);
    const auto a = model.predict(m), b = back.predict(m);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].scores == b[i].scores);
}

TEST_CASE("prediction checks the feature schema") {
    const auto m = noisy(100, 11);
    const auto model = train_gbdt(m, LabelSpace::binary(), small_gbdt(5));
    FeatureMatrix other({"f0", "f1", "f2", "f3", "zz"}, 1);
    CHECK_THROWS_WITH(model.predict(other), doctest::Contains("feature schema mismatch"));
}

TEST_CASE("configs validate") {
    GbdtConfig g;
    g.trees = 0;
    CHECK_THROWS(g.validate());
    g = GbdtConfig{};
    g.subsample = 0;
    CHECK_THROWS(g.validate());
    LinearConfig l;
    l.epochs = 0;
    CHECK_THROWS(l.validate());
    CHECK(parse_model_kind("svm") == ModelKind::linear);
    CHECK(parse_model_kind("boosted") == ModelKind::gbdt);
    CHECK_THROWS(parse_model_kind("forest"));
}

}
