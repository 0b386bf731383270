#include "codetect/common.hpp"
#include "codetect/pipeline/pipeline.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <map>

using namespace codetect;
namespace fs = std::filesystem;

namespace {

const std::string kData = CODETECT_TEST_DATA;

RunConfig fixture_config(std::vector<std::string> overrides = {}) {
    overrides.insert(overrides.begin(), "model.gbdt.trees=150");
    auto tree = default_config_json();
    tree["corpus"]["paths"] = {kData + "/corpus.jsonl", kData + "/hybrids.jsonl"};
    for (const auto& o : overrides) apply_override(tree, o);
    auto cfg = config_from_json(tree);
    cfg.finalize();
    return cfg;
}

// Tests share one prepared corpus; preparing it parses 840 files.
const PreparedCorpus& fixture_corpus() {
    static const PreparedCorpus corpus = prepare_corpus(fixture_config());
    return corpus;
}

fs::path scratch_dir(const std::string& name) {
    auto p = fs::temp_directory_path() / ("codetect-test-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("config validation happens before any work") {
    CHECK_THROWS_WITH(fixture_config({"qa.low_percentile=90", "qa.high_percentile=90"}),
                      doctest::Contains("percentile"));
    auto tree = default_config_json();
    CHECK_THROWS_WITH(apply_override(tree, "model.gbdt.depth=3"), doctest::Contains("unknown config key 'model.gbdt.depth'"));
    CHECK_THROWS(apply_override(tree, "seed"));
    tree["qa"]["typo"] = 1;
    CHECK_THROWS_WITH(config_from_json(tree), doctest::Contains("unknown config key 'qa.typo'"));
    auto missing = default_config_json();
    missing["corpus"]["paths"] = {"/nonexistent/corpus.jsonl"};
    CHECK_THROWS_WITH(config_from_json(missing), doctest::Contains("corpus file does not exist"));
    try {
        fixture_config({"model.kind=forest"});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::validation);
    }
}

TEST_CASE("overrides parse JSON values and fall back to strings") {
    auto tree = default_config_json();
    apply_override(tree, "seed=7");
    apply_override(tree, "task=ternary");
    apply_override(tree, "split.ratios=[0.6,0.2,0.2]");
    apply_override(tree, "eval.holdout.generator=[\"nxcode\"]");
    apply_override(tree, "eval.protocol=ood");
    CHECK(tree["seed"] == 7);
    CHECK(tree["task"] == "ternary");
    const auto cfg = config_from_json(tree);
    CHECK(cfg.task == Task::ternary);
    CHECK(cfg.split.ratios[0] == 0.6);
    REQUIRE(cfg.ood);
    CHECK(cfg.ood->generators == std::set<std::string>{"nxcode"});
}

TEST_CASE("config digest tracks results, not output location") {
    const auto a = fixture_config();
    auto b = fixture_config({"output.dir=/tmp/elsewhere", "jobs=3"});
    CHECK(a.digest() == b.digest());
    CHECK(a.digest() != fixture_config({"seed=1"}).digest());
    CHECK(a.digest().size() == 64);
}

TEST_CASE("relative corpus paths resolve against the config file") {
    const auto dir = scratch_dir("relative");
    fs::copy_file(kData + "/corpus.jsonl", dir / "c.jsonl");
    write_file((dir / "run.json").string(), R"({"corpus": {"paths": ["c.jsonl"]}, "seed": 3})");
    const auto cfg = load_config((dir / "run.json").string(), {"model.kind=linear"});
    REQUIRE(cfg.corpus_paths.size() == 1);
    CHECK(cfg.corpus_paths[0] == (dir / "c.jsonl").string());
    CHECK(cfg.seed == 3);
    CHECK(cfg.model.kind == ModelKind::linear);
    write_file((dir / "bad.json").string(), "{ not json");
    CHECK_THROWS_WITH(load_config((dir / "bad.json").string()), doctest::Contains("not valid JSON"));
}

TEST_CASE("prepared corpus") {
    const auto& c = fixture_corpus();
    REQUIRE(c.samples.size() == c.features.size());
    CHECK(c.samples.size() == c.qa.retained);
    for (const auto& s : c.samples) CHECK(s.split.has_value());
    CHECK(c.digest == sha256_hex(c.to_jsonl()));
    std::size_t hybrids = 0;
    for (const auto& s : c.samples) hybrids += s.label == Label::hybrid;
    CHECK(hybrids > 100);
    CHECK(task_rows(c.samples, Task::binary).size() == c.samples.size() - hybrids);
    CHECK(task_rows(c.samples, Task::ternary).size() == c.samples.size());
}

TEST_CASE("mean AST depth agrees across splits") {
    const auto& c = fixture_corpus();
    const auto rows = task_rows(c.samples, Task::ternary);
    const auto stats = depth_statistics(c, rows, LabelSpace::ternary());
    for (const std::string label : {"human", "llm", "hybrid"}) {
        const double train = stats["train"][label]["mean_ast_depth"];
        for (const std::string split : {"val", "test"}) {
            const double other = stats[split][label]["mean_ast_depth"];
            CHECK(std::abs(other - train) / train < 0.10);
        }
    }
}

TEST_CASE("evaluation is reproducible") {
    const auto& c = fixture_corpus();
    const auto cfg = fixture_config();
    const auto a = run_evaluation(c, cfg, nullptr, Exec::parallel);
    const auto b = run_evaluation(c, cfg, nullptr, Exec::serial);
    CHECK(a.report.to_json() == b.report.to_json());
    CHECK(predictions_to_jsonl(a.predictions) == predictions_to_jsonl(b.predictions));
    CHECK(model_digest(a.model) == model_digest(b.model));
    CHECK(a.report.protocol["config_digest"] == cfg.digest());
    CHECK(a.report.protocol["corpus_digest"] == c.digest);
    CHECK(a.report.protocol["model_digest"] == model_digest(a.model));
    CHECK(a.report.overall.f1 > 0.9);
    CHECK(a.report.groups.count("language"));

    // Reusing the trained model gives the same numbers.
    const auto again = run_evaluation(c, cfg, &a.model);
    CHECK(again.report.to_json() == a.report.to_json());

    auto ternary = cfg;
    ternary.task = Task::ternary;
    CHECK_THROWS_WITH(run_evaluation(c, ternary, &a.model), doctest::Contains("task"));
}

TEST_CASE("hybrid degradation on the fixture corpus") {
    const auto& c = fixture_corpus();
    // Default ensemble size; shorter ensembles give a noisier curve.
    const auto ev = run_evaluation(c, fixture_config({"model.gbdt.trees=2000"}));
    REQUIRE(ev.degradation);
    CHECK(ev.degradation->non_increasing);
    CHECK(ev.degradation->spearman_rho < 0);
    std::size_t n = 0;
    for (const auto& b : ev.degradation->bins) n += b.n;
    std::size_t hybrids = 0;
    for (const auto& s : c.samples) hybrids += s.label == Label::hybrid && s.human_fraction;
    CHECK(n == hybrids);
}

TEST_CASE("held-out generator yields a single-class test set") {
    const auto& c = fixture_corpus();
    const auto cfg = fixture_config({"eval.protocol=ood", "eval.holdout.generator=[\"codeqwen15\"]"});
    const auto ev = run_evaluation(c, cfg);
    CHECK(ev.report.overall.single_class_gold);
    const auto j = nlohmann::json::parse(ev.report.to_json());
    CHECK_FALSE(j["overall"].contains("P"));
    CHECK(j["overall"]["note"] == "single-class gold");
    for (auto r : ev.train_rows) {
        const auto& s = c.samples[r];
        CHECK((!s.generator || name_of(*s.generator) != "codeqwen15"));
    }
    CHECK(j["protocol"]["protocol"] == "ood");

    const auto lang = fixture_config({"eval.protocol=ood", "eval.holdout.language=[\"java\"]"});
    const auto lev = run_evaluation(c, lang);
    CHECK_FALSE(lev.report.overall.single_class_gold);
    for (auto r : lev.test_rows) CHECK(name_of(c.samples[r].language) == "java");

    const auto absent = fixture_config({"eval.protocol=ood", "eval.holdout.source=[\"rosetta\"]"});
    CHECK_THROWS_WITH(run_evaluation(c, absent), doctest::Contains("does not occur"));
}

TEST_CASE("attribution and ternary tasks") {
    const auto& c = fixture_corpus();
    const auto attr = run_evaluation(c, fixture_config({"task=attribution"}));
    CHECK(attr.report.label_space.size() == 6);
    CHECK(attr.report.label_space.name(0) == "human");
    CHECK_FALSE(attr.degradation);
    const auto tern = run_evaluation(c, fixture_config({"task=ternary"}));
    CHECK(tern.report.label_space.labels() == std::vector<std::string>{"human", "llm", "hybrid"});
    CHECK(tern.report.overall.n == tern.test_rows.size());
}

TEST_CASE("single-snippet prediction matches batch scoring") {
    const auto& c = fixture_corpus();
    const auto ev = run_evaluation(c, fixture_config());
    std::map<std::string, const CodeSample*> by_id;
    for (const auto& s : c.samples) by_id[s.id] = &s;
    std::set<std::string> labels_seen;
    for (std::size_t i = 0; i < ev.predictions.size(); i += 7) {
        const auto& rec = ev.predictions[i];
        const auto& s = *by_id.at(rec.id);
        const auto single = predict_single(ev.model, s.code, name_of(s.language));
        CHECK(single.label == rec.pred);
        REQUIRE(single.scores.size() == rec.scores.size());
        for (std::size_t k = 0; k < rec.scores.size(); ++k) {
            CHECK(single.scores[k].second == doctest::Approx(rec.scores[k].second).epsilon(1e-12));
        }
        labels_seen.insert(single.label);
    }
    CHECK(labels_seen.size() == 2);

    CHECK_THROWS_WITH(predict_single(ev.model, "", "python"), doctest::Contains("empty input"));
    CHECK_THROWS_WITH(predict_single(ev.model, "x = 1", "cobol"),
                      doctest::Contains("unsupported language 'cobol'; supported: python"));
    const auto broken = predict_single(ev.model, ")))(((", "python");
    CHECK_FALSE(broken.ast_available);
    CHECK_FALSE(broken.warnings.empty());
}

TEST_CASE("zero-shot baseline beats the majority class") {
    const auto z = run_zeroshot(fixture_corpus(), fixture_config());
    CHECK(z.report.overall.accuracy - z.majority_accuracy >= 0.05);
    CHECK(z.backend == "ngram");
    const auto j = nlohmann::json::parse(z.to_json());
    CHECK(j.contains("threshold_fit"));
    CHECK(j.contains("majority_baseline_accuracy"));
}

TEST_CASE("artifacts carry digests") {
    const auto& c = fixture_corpus();
    const auto cfg = fixture_config();
    const auto ev = run_evaluation(c, cfg);
    const auto dir = scratch_dir("artifacts");
    {
        ArtifactWriter out(dir.string(), cfg.digest());
        write_corpus_artifacts(out, c);
        write_evaluation_artifacts(out, ev);
        out.finish(c.digest);
    }
    const auto manifest = nlohmann::json::parse(read_file((dir / "manifest.json").string()));
    CHECK(manifest["config_digest"] == cfg.digest());
    CHECK(manifest["corpus_digest"] == c.digest);
    for (const auto& name : {"predictions.jsonl", "eval_report.json", "confusion.csv", "features.csv"}) {
        INFO(name);
        CHECK(manifest["artifacts"][name] == sha256_hex(read_file((dir / name).string())));
    }
    const auto report = nlohmann::ordered_json::parse(read_file((dir / "eval_report.json").string()));
    CHECK(report.begin().key() == "config_digest");
    const auto model = load_model((dir / "model.json").string());
    CHECK(manifest["artifacts"]["model.json"] == model_digest(model));
    const auto preds = predictions_from_jsonl(read_file((dir / "predictions.jsonl").string()));
    CHECK(score_predictions(preds, ev.report.label_space).f1 == ev.report.overall.f1);
}

}
