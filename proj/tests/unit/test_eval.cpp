#include "codetect/eval/degradation.hpp"
#include "codetect/eval/metrics.hpp"
#include "codetect/eval/ood.hpp"
#include "codetect/eval/report.hpp"
#include "codetect/random.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace codetect;

namespace {

using Idx = std::vector<std::size_t>;

CodeSample sample_of(std::string id, Language lang, Label label, std::optional<Generator> gen = {},
                     Source src = Source::github) {
    CodeSample s;
    s.id = std::move(id);
    s.code = "x = 1\n";
    s.language = lang;
    s.source = src;
    s.label = label;
    if (gen) s.generator = GeneratorTag(*gen);
    return s;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("macro metrics examples") {
    const auto space = LabelSpace::binary();
    SUBCASE("all correct") {
        const Idx y{0, 1, 1, 0};
        const auto m = macro_metrics(y, y, space);
        CHECK(m.precision == 1.0);
        CHECK(m.recall == 1.0);
        CHECK(m.f1 == 1.0);
        CHECK(m.accuracy == 1.0);
    }
    SUBCASE("hand computed") {
        const auto m = macro_metrics(Idx{0, 1, 1, 1}, Idx{0, 0, 1, 1}, space);
        CHECK(m.f1 == doctest::Approx(11.0 / 15.0).epsilon(1e-15));
        CHECK(m.accuracy == 0.75);
        CHECK(m.precision == doctest::Approx((1.0 + 2.0 / 3.0) / 2));
        CHECK(m.recall == doctest::Approx(0.75));
        const auto pc = per_class_metrics(confusion(Idx{0, 1, 1, 1}, Idx{0, 0, 1, 1}, 2));
        CHECK(pc[0].f1 == doctest::Approx(2.0 / 3.0));
        CHECK(pc[1].f1 == doctest::Approx(4.0 / 5.0));
    }
    SUBCASE("absent class contributes zero") {
        const auto m = macro_metrics(Idx{0, 1, 0}, Idx{0, 1, 0}, LabelSpace::ternary());
        CHECK(m.f1 == doctest::Approx(2.0 / 3.0));
        CHECK(m.precision == doctest::Approx(2.0 / 3.0));
        CHECK(per_class_metrics(confusion(Idx{0, 1, 0}, Idx{0, 1, 0}, 3))[2].zero_division);
    }
    SUBCASE("errors") {
        CHECK_THROWS_WITH(macro_metrics(Idx{0, 1}, Idx{0}, space), doctest::Contains("differ in length"));
        CHECK_THROWS(macro_metrics(Idx{}, Idx{}, space));
        CHECK_THROWS(macro_metrics(Idx{2}, Idx{0}, space));
    }
}

TEST_CASE("random confusion matrices against the counting oracle") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t k = 2 + uniform_index(rng, 5);
        const std::size_t n = 1 + uniform_index(rng, 60);
        Idx p(n), g(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = uniform_index(rng, k), g[i] = uniform_index(rng, k);
        const auto cm = confusion(p, g, k);
        const auto m = macro_metrics(cm);
        CHECK(m.f1 == doctest::Approx(oracle::macro_f1(p, g, k)).epsilon(1e-14));
        CHECK(m.accuracy == static_cast<double>(cm.trace()) / static_cast<double>(cm.total()));
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t row = 0;
            for (std::size_t q = 0; q < k; ++q) row += cm.at(c, q);
            CHECK(row == static_cast<std::size_t>(std::count(g.begin(), g.end(), c)));
        }
    }
}

TEST_CASE("metrics survive a consistent relabeling") {
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t k = 3;
        Idx p(40), g(40);
        for (std::size_t i = 0; i < 40; ++i) p[i] = uniform_index(rng, k), g[i] = uniform_index(rng, k);
        Idx perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        shuffle(std::span<std::size_t>(perm), rng);
        Idx p2(40), g2(40);
        for (std::size_t i = 0; i < 40; ++i) p2[i] = perm[p[i]], g2[i] = perm[g[i]];
        const auto a = macro_metrics(confusion(p, g, k));
        const auto b = macro_metrics(confusion(p2, g2, k));
        CHECK(a.f1 == doctest::Approx(b.f1).epsilon(1e-15));
        CHECK(a.precision == doctest::Approx(b.precision).epsilon(1e-15));
        CHECK(a.recall == doctest::Approx(b.recall).epsilon(1e-15));
        CHECK(a.accuracy == b.accuracy);
    }
}

TEST_CASE("breakdown by language") {
    // Perfect on python, coin flips on java.
    const auto space = LabelSpace::binary();
    std::vector<CodeSample> samples;
    Idx p, g;
    Rng rng(10);
    for (int i = 0; i < 2000; ++i) {
        const bool py = i % 2 == 0;
        const std::size_t gold = (i / 2) % 2;
        samples.push_back(sample_of(std::to_string(i), py ? Language::python : Language::java,
                                    gold ? Label::llm : Label::human, gold ? std::optional(Generator::gpt4o) : std::nullopt));
        g.push_back(gold);
        p.push_back(py ? gold : uniform_index(rng, 2));
    }
    const std::vector<GroupKey> keys{GroupKey::language, GroupKey::source};
    const auto report = make_report(p, g, samples, space, keys);
    const auto& lang = report.groups.at("language");
    CHECK(lang.at("python").metrics.f1 == 1.0);
    CHECK(lang.at("java").metrics.f1 == doctest::Approx(0.5).epsilon(0.05));
    // One source only: the group equals the overall row.
    const auto& src = report.groups.at("source").at("github");
    CHECK(src.metrics.f1 == report.overall.f1);
    CHECK(src.confusion == report.confusion);
    ConfusionMatrix sum(2);
    for (const auto& [_, r] : lang) sum += r.confusion;
    CHECK(sum == report.confusion);
}

TEST_CASE("report flags single-class gold and low support") {
    const auto space = LabelSpace::binary();
    std::vector<CodeSample> samples;
    for (int i = 0; i < 12; ++i) {
        samples.push_back(sample_of("s" + std::to_string(i), i < 4 ? Language::cpp : Language::python, Label::llm,
                                    Generator::nxcode));
    }
    Idx g(12, 1), p(12, 1);
    p[0] = p[1] = 0;
    const std::vector<GroupKey> keys{GroupKey::language, GroupKey::generator};
    const auto report = make_report(p, g, samples, space, keys);
    CHECK(report.overall.single_class_gold);
    const auto j = nlohmann::json::parse(report.to_json());
    CHECK_FALSE(j["overall"].contains("P"));
    CHECK(j["overall"]["note"] == "single-class gold");
    CHECK(j["overall"]["A"].get<double>() == doctest::Approx(10.0 / 12));
    CHECK(j["groups"]["language"]["cpp"]["low_support"] == true);
    CHECK(j["groups"]["language"]["cpp"]["A"] == 0.5);
    CHECK(j["groups"]["generator"].contains("nxcode"));
    CHECK(report.text_table().find("precision omitted") != std::string::npos);
    CHECK(report.confusion_csv() == "gold\\pred,human,llm\nhuman,0,0\nllm,2,10\n");
    CHECK(report.to_json() == make_report(p, g, samples, space, keys).to_json());
}

TEST_CASE("text table uses percent with two decimals") {
    const auto space = LabelSpace::binary();
    std::vector<CodeSample> samples{sample_of("a", Language::python, Label::human),
                                    sample_of("b", Language::python, Label::human),
                                    sample_of("c", Language::python, Label::llm, Generator::gpt4o),
                                    sample_of("d", Language::python, Label::llm, Generator::gpt4o)};
    const auto table = make_report(Idx{0, 1, 1, 1}, Idx{0, 0, 1, 1}, samples, space).text_table();
    CHECK(table.find("73.33") != std::string::npos);
    CHECK(table.find("75.00") != std::string::npos);
}

TEST_CASE("OOD partition holds values out of training") {
    synth::CorpusSpec spec;
    spec.seed = 11;
    auto samples = synth::make_corpus(300, spec);
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i].split = i % 10 < 8 ? Split::train : Split::test;

    OodProtocol gen;
    gen.generators = {"codellama"};
    const auto part = partition_ood(samples, gen);
    CHECK_NOTHROW(check_ood_disjoint(samples, part, gen));
    CHECK_FALSE(part.test.empty());
    for (auto r : part.test) {
        CHECK(samples[r].label == Label::llm);
        CHECK(name_of(*samples[r].generator) == "codellama");
    }
    for (auto r : part.train) {
        CHECK(samples[r].split == Split::train);
        CHECK((!samples[r].generator || name_of(*samples[r].generator) != "codellama"));
    }

    OodProtocol lang;
    lang.languages = {"java"};
    const auto lp = partition_ood(samples, lang);
    std::set<std::string> train_langs, test_langs;
    for (auto r : lp.train) train_langs.insert(name_of(samples[r].language));
    for (auto r : lp.test) test_langs.insert(name_of(samples[r].language));
    CHECK(test_langs == std::set<std::string>{"java"});
    CHECK(train_langs == std::set<std::string>{"cpp", "python"});

    OodProtocol leak = lang;
    OodPartition bad = lp;
    bad.train.push_back(lp.test.front());
    CHECK_THROWS_WITH(check_ood_disjoint(samples, bad, leak), doctest::Contains("OOD leak"));

    OodProtocol absent;
    absent.generators = {"starcoder"};
    CHECK_THROWS_WITH(partition_ood(samples, absent), doctest::Contains("does not occur"));
    CHECK_THROWS(partition_ood(samples, OodProtocol{}));
    CHECK(OodProtocol::from_json(nlohmann::json(gen.to_json())).generators == gen.generators);
}

TEST_CASE("spearman with ties") {
    CHECK(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}) == doctest::Approx(-1.0));
    // Ranks of y are {1.5, 1.5, 3}: Pearson of {1,2,3} with them.
    CHECK(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{5, 5, 9}) == doctest::Approx(std::sqrt(3.0) / 2));
    CHECK(std::isnan(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{4, 4, 4})));
    CHECK(std::isnan(spearman(std::vector<double>{1}, std::vector<double>{2})));
}

TEST_CASE("degradation curve bins") {
    const auto space = LabelSpace::binary();
    std::vector<double> frac;
    Idx p, g;
    // Accuracy falls as the human fraction grows: bin b gets 10 samples
    // with 10 - b correct.
    for (int b = 0; b < 10; ++b) {
        for (int i = 0; i < 10; ++i) {
            frac.push_back(b / 10.0 + 0.05);
            g.push_back(1);
            p.push_back(i < 10 - b ? 1 : 0);
        }
    }
    frac.push_back(1.0);  // closed last bin
    g.push_back(1);
    p.push_back(0);
    const auto curve = degradation_curve(frac, p, g, space);
    REQUIRE(curve.bins.size() == 10);
    CHECK(curve.bins[0].lower == 0.0);
    CHECK(curve.bins[0].metrics.accuracy == 1.0);
    CHECK(curve.bins[9].n == 11);
    CHECK(curve.bins[9].metrics.accuracy == doctest::Approx(1.0 / 11));
    CHECK(curve.non_increasing);
    CHECK(curve.spearman_rho == doctest::Approx(-1.0));

    // Always answering llm is perfect on llm-labeled hybrids.
    const Idx all_llm(p.size(), 1);
    const auto flat = degradation_curve(frac, all_llm, g, space);
    for (const auto& b : flat.bins) CHECK(b.metrics.accuracy == 1.0);
    CHECK(std::isnan(flat.spearman_rho));

    CHECK_THROWS(degradation_curve(std::vector<double>{1.5}, Idx{1}, Idx{1}, space));
    CHECK_THROWS(degradation_curve(frac, p, g, space, 0));
}

TEST_CASE("predictions exchange format") {
    const auto space = LabelSpace::ternary();
    std::vector<PredictionRecord> recs{
        {"a", "human", "human", {{"human", 0.7}, {"llm", 0.2}, {"hybrid", 0.1}}},
        {"b", "hybrid", "llm", {{"human", 0.1}, {"llm", 0.5}, {"hybrid", 0.4}}},
        {"c", "llm", "llm", {{"human", 0.0}, {"llm", 1.0}, {"hybrid", 0.0}}},
    };
    const auto text = predictions_to_jsonl(recs);
    CHECK(text.substr(0, text.find('\n')) ==
          R"({"id":"a","gold":"human","pred":"human","scores":{"human":0.7,"llm":0.2,"hybrid":0.1}})");
    const auto back = predictions_from_jsonl(text);
    REQUIRE(back.size() == 3);
    CHECK(back[1].scores == recs[1].scores);
    CHECK(predictions_to_jsonl(back) == text);
    const auto m = score_predictions(back, space);
    CHECK(m.accuracy == doctest::Approx(2.0 / 3));
    CHECK(m.f1 == doctest::Approx(macro_metrics(Idx{0, 1, 1}, Idx{0, 2, 1}, space).f1));
    CHECK_THROWS_WITH(predictions_from_jsonl("{\"id\":\"a\"}\n"), doctest::Contains("predictions line 1"));
    const std::vector<PredictionRecord> odd{{"z", "martian", "human", {}}};
    CHECK_THROWS(score_predictions(odd, space));
}

}
