#include "codetect/pipeline/pipeline.hpp"

#include "codetect/common.hpp"
#include "codetect/corpus/comments.hpp"
#include "codetect/corpus/ingest.hpp"
#include "codetect/corpus/splits.hpp"
#include "codetect/random.hpp"
#include "codetect/eval/ood.hpp"
#include "codetect/zeroshot/adapter.hpp"
#include "codetect/zeroshot/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <memory>

namespace codetect {

std::string PreparedCorpus::to_jsonl() const {
    std::string out;
    for (const auto& s : samples) out += to_jsonl_line(s) + "\n";
    return out;
}

PreparedCorpus prepare_corpus(const RunConfig& cfg, Exec exec) {
    if (cfg.corpus_paths.empty()) throw validation_error("no corpus files configured (corpus.paths)");
    std::vector<CodeSample> raw;
    for (const auto& path : cfg.corpus_paths) {
        auto part = ingest(path);
        raw.insert(raw.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return prepare_corpus(std::move(raw), cfg, exec);
}

PreparedCorpus prepare_corpus(std::vector<CodeSample> raw, const RunConfig& cfg, Exec exec) {
    QaResult qa = run_qa(raw, cfg.qa, exec);
    auto features = extract_all(qa.samples, exec);

    PreparedCorpus out;
    out.qa = std::move(qa.report);
    std::vector<CodeSample> kept;
    for (std::size_t i = 0; i < qa.samples.size(); ++i) {
        if (!features[i].ast_available) {
            ++out.qa.dropped_unparsable;
            continue;
        }
        kept.push_back(std::move(qa.samples[i]));
        out.features.push_back(std::move(features[i]));
    }
    out.qa.retained = kept.size();
    if (kept.empty()) throw stage_error("no samples left after QA");

    const bool all_split = std::all_of(kept.begin(), kept.end(), [](const auto& s) { return s.split.has_value(); });
    if (cfg.keep_existing_splits && all_split) {
        out.samples = std::move(kept);
    } else {
        auto split = assign_splits(std::move(kept), cfg.split);
        out.samples = std::move(split.samples);
        out.qa.small_strata = std::move(split.small_strata);
    }
    out.digest = sha256_hex(out.to_jsonl());
    return out;
}

std::vector<std::size_t> task_rows(std::span<const CodeSample> samples, Task task) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (task == Task::ternary || samples[i].label != Label::hybrid) rows.push_back(i);
    }
    return rows;
}

std::vector<std::size_t> rows_in_split(std::span<const CodeSample> samples, std::span<const std::size_t> rows,
                                       Split split) {
    std::vector<std::size_t> out;
    for (auto r : rows) {
        if (samples[r].split == split) out.push_back(r);
    }
    return out;
}

namespace {

std::vector<FeatureVector> pick(const std::vector<FeatureVector>& all, std::span<const std::size_t> rows) {
    std::vector<FeatureVector> out;
    out.reserve(rows.size());
    for (auto r : rows) out.push_back(all[r]);
    return out;
}

std::vector<CodeSample> pick(const std::vector<CodeSample>& all, std::span<const std::size_t> rows) {
    std::vector<CodeSample> out;
    out.reserve(rows.size());
    for (auto r : rows) out.push_back(all[r]);
    return out;
}

std::vector<std::size_t> intersect(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

LabelSpace space_for(const PreparedCorpus& corpus, std::span<const std::size_t> rows, Task task) {
    if (task != Task::attribution) return LabelSpace::for_task(task);
    return LabelSpace::attribution(pick(corpus.samples, rows));
}

std::vector<PredictionRecord> records(const FeatureMatrix& m, std::span<const std::size_t> preds,
                                      std::span<const std::size_t> golds,
                                      const std::vector<std::vector<double>>& scores, const LabelSpace& space) {
    std::vector<PredictionRecord> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out[i].id = m.ids[i];
        out[i].gold = space.name(golds[i]);
        out[i].pred = space.name(preds[i]);
        for (std::size_t k = 0; k < space.size(); ++k) out[i].scores.emplace_back(space.name(k), scores[i][k]);
    }
    return out;
}

std::vector<std::size_t> gold_indices(const FeatureMatrix& m, const LabelSpace& space) {
    std::vector<std::size_t> golds;
    golds.reserve(m.rows());
    for (const auto& l : m.labels) golds.push_back(space.index(l));
    return golds;
}

}  // namespace

FeatureMatrix corpus_matrix(const PreparedCorpus& corpus, std::span<const std::size_t> rows,
                            const FeatureSchema& schema, const LabelSpace& space) {
    std::vector<std::string> labels;
    labels.reserve(rows.size());
    for (auto r : rows) labels.push_back(space.gold_label(corpus.samples[r]));
    return apply_schema(schema, pick(corpus.features, rows), labels);
}

TrainOutcome train_on_rows(const PreparedCorpus& corpus, std::span<const std::size_t> rows, const LabelSpace& space,
                           const RunConfig& cfg, Exec exec) {
    if (rows.empty()) throw stage_error("no training rows");
    const auto vectors = pick(corpus.features, rows);
    FeatureSchema schema = fit_schema(vectors, cfg.max_missing);
    TrainOutcome out;
    out.train_rows.assign(rows.begin(), rows.end());
    out.train_matrix = corpus_matrix(corpus, rows, schema, space);
    out.model = train_model(out.train_matrix, space, cfg.model, exec);
    out.model.schema = std::move(schema);
    out.model.metadata["task"] = to_string(space.task());
    out.model.metadata["corpus_digest"] = corpus.digest;
    return out;
}

TrainOutcome train_stage(const PreparedCorpus& corpus, const RunConfig& cfg, Exec exec) {
    const auto rows = task_rows(corpus.samples, cfg.task);
    const auto train = rows_in_split(corpus.samples, rows, Split::train);
    return train_on_rows(corpus, train, space_for(corpus, rows, cfg.task), cfg, exec);
}

nlohmann::ordered_json depth_statistics(const PreparedCorpus& corpus, std::span<const std::size_t> rows,
                                        const LabelSpace& space) {
    const std::string depth(feature::ast_depth);
    std::map<std::string, std::map<std::string, std::pair<double, std::size_t>>> acc;
    for (auto r : rows) {
        const auto v = corpus.features[r].get(depth);
        if (!v) continue;
        const auto& s = corpus.samples[r];
        auto& cell = acc[std::string(to_string(s.split.value_or(Split::train)))][space.gold_label(s)];
        cell.first += *v;
        ++cell.second;
    }
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [split, by_label] : acc) {
        for (const auto& [label, cell] : by_label) {
            j[split][label] = {{"n", cell.second}, {"mean_ast_depth", cell.first / static_cast<double>(cell.second)}};
        }
    }
    return j;
}

Evaluation run_evaluation(const PreparedCorpus& corpus, const RunConfig& cfg, const TrainedModel* pretrained,
                          Exec exec) {
    const auto rows = task_rows(corpus.samples, cfg.task);
    Evaluation ev;
    nlohmann::ordered_json protocol;
    if (cfg.ood) {
        const OodPartition part = partition_ood(corpus.samples, *cfg.ood);
        check_ood_disjoint(corpus.samples, part, *cfg.ood);
        ev.train_rows = intersect(part.train, rows);
        ev.test_rows = intersect(part.test, rows);
        protocol["protocol"] = "ood";
        protocol["holdout"] = cfg.ood->to_json();
    } else {
        ev.train_rows = rows_in_split(corpus.samples, rows, Split::train);
        ev.test_rows = rows_in_split(corpus.samples, rows, Split::test);
        protocol["protocol"] = "in-domain";
    }
    if (ev.test_rows.empty()) throw stage_error("no evaluation rows for task " + std::string(to_string(cfg.task)));

    if (pretrained) {
        if (pretrained->label_space.task() != cfg.task) {
            throw validation_error("model was trained for task '" + std::string(to_string(pretrained->label_space.task())) +
                                   "' but the run asks for '" + std::string(to_string(cfg.task)) + "'");
        }
        if (!pretrained->schema) throw validation_error("model carries no feature schema; retrain it with this build");
        ev.model = *pretrained;
    } else {
        ev.model = train_on_rows(corpus, ev.train_rows, space_for(corpus, rows, cfg.task), cfg, exec).model;
    }
    const LabelSpace& space = ev.model.label_space;
    const FeatureSchema& schema = *ev.model.schema;

    ev.test_matrix = corpus_matrix(corpus, ev.test_rows, schema, space);
    const auto predictions = ev.model.predict(ev.test_matrix, exec);
    std::vector<std::size_t> preds;
    std::vector<std::vector<double>> scores;
    for (const auto& p : predictions) {
        preds.push_back(p.label);
        scores.push_back(p.scores);
    }
    const auto golds = gold_indices(ev.test_matrix, space);
    const auto test_samples = pick(corpus.samples, ev.test_rows);
    ev.report = make_report(preds, golds, test_samples, space, cfg.breakdown);
    ev.predictions = records(ev.test_matrix, preds, golds, scores, space);

    protocol["task"] = to_string(cfg.task);
    protocol["model_kind"] = to_string(ev.model.kind);
    protocol["train_rows"] = ev.train_rows.size();
    protocol["test_rows"] = ev.test_rows.size();
    protocol["seed"] = cfg.seed;
    protocol["corpus_digest"] = corpus.digest;
    protocol["model_digest"] = model_digest(ev.model);
    protocol["config_digest"] = cfg.digest();
    ev.report.protocol = std::move(protocol);

    if (cfg.task == Task::binary) {
        std::vector<std::size_t> hybrid_rows;
        for (std::size_t i = 0; i < corpus.samples.size(); ++i) {
            const auto& s = corpus.samples[i];
            if (s.label == Label::hybrid && s.human_fraction) hybrid_rows.push_back(i);
        }
        if (!hybrid_rows.empty()) {
            const FeatureMatrix hm = corpus_matrix(corpus, hybrid_rows, schema, space);
            std::vector<std::size_t> hp;
            for (const auto& p : ev.model.predict(hm, exec)) hp.push_back(p.label);
            const std::vector<std::size_t> hg(hybrid_rows.size(), space.index("llm"));
            std::vector<double> fractions;
            for (auto r : hybrid_rows) fractions.push_back(*corpus.samples[r].human_fraction);
            ev.degradation = degradation_curve(fractions, hp, hg, space, cfg.degradation_bins);
        }
    }
    ev.depth_stats = depth_statistics(corpus, rows, space_for(corpus, rows, cfg.task));
    return ev;
}

EvalReport score_external(std::span<const CodeSample> samples, std::span<const PredictionRecord> predictions,
                          const RunConfig& cfg) {
    if (predictions.empty()) throw validation_error("predictions file is empty");
    std::unordered_map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < samples.size(); ++i) by_id.emplace(samples[i].id, i);
    std::vector<CodeSample> joined;
    for (const auto& r : predictions) {
        auto it = by_id.find(r.id);
        if (it == by_id.end()) throw validation_error("prediction id " + r.id + " is not in the corpus");
        joined.push_back(samples[it->second]);
    }
    const LabelSpace space =
        cfg.task == Task::attribution ? LabelSpace::attribution(samples) : LabelSpace::for_task(cfg.task);
    std::vector<std::size_t> preds, golds;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const auto& r = predictions[i];
        if (r.gold != space.gold_label(joined[i])) {
            throw validation_error("gold label '" + r.gold + "' for id " + r.id + " disagrees with the corpus ('" +
                                   space.gold_label(joined[i]) + "')");
        }
        for (const auto& [label, _] : r.scores) space.index(label);
        golds.push_back(space.index(r.gold));
        preds.push_back(space.index(r.pred));
    }
    EvalReport report = make_report(preds, golds, joined, space, cfg.breakdown);
    report.protocol = {{"protocol", "external"},
                       {"task", to_string(cfg.task)},
                       {"predictions", predictions.size()},
                       {"predictions_digest", sha256_hex(predictions_to_jsonl(predictions))},
                       {"config_digest", cfg.digest()}};
    return report;
}

ImportanceReport explain_model(const TrainedModel& model, const FeatureMatrix& m, const RunConfig& cfg, Exec exec) {
    if (cfg.explain.method == ImportanceMethod::gain) return gain_importance(model);
    return permutation_importance(model, m, cfg.explain.metric, cfg.explain.repeats, mix_seed(cfg.seed, 3), exec);
}

std::string ZeroShotEvaluation::to_json() const {
    auto j = nlohmann::ordered_json::parse(report.to_json());
    j["threshold_fit"] = {{"threshold", fit.threshold},
                          {"val_macro_f1", fit.macro_f1},
                          {"inverted_polarity", fit.inverted_polarity},
                          {"inverted_macro_f1", fit.inverted_macro_f1}};
    j["majority_baseline_accuracy"] = majority_accuracy;
    return j.dump(2);
}

ZeroShotEvaluation run_zeroshot(const PreparedCorpus& corpus, const RunConfig& cfg, Exec exec) {
    const auto rows = task_rows(corpus.samples, Task::binary);
    std::vector<std::string> train_code;
    for (auto r : rows_in_split(corpus.samples, rows, Split::train)) train_code.push_back(corpus.samples[r].code);
    const auto val = pick(corpus.samples, rows_in_split(corpus.samples, rows, Split::val));
    const auto test = pick(corpus.samples, rows_in_split(corpus.samples, rows, Split::test));
    if (val.empty() || test.empty()) throw stage_error("zero-shot baseline needs val and test samples");

    ZeroShotEvaluation z;
    std::unique_ptr<LikelihoodBackend> backend;
    if (cfg.zeroshot.adapter_command.empty()) {
        if (train_code.empty()) throw stage_error("no train-split samples for the likelihood model");
        auto ngram = std::make_unique<NgramBackend>(cfg.zeroshot.order, cfg.zeroshot.add_k);
        ngram->train(train_code);
        backend = std::move(ngram);
        z.backend = "ngram";
    } else {
        std::vector<CodeSample> both = val;
        both.insert(both.end(), test.begin(), test.end());
        const auto recs = run_adapter_process(cfg.zeroshot.adapter_command, both);
        backend = std::make_unique<PrecomputedBackend>(both, recs);
        z.backend = cfg.zeroshot.adapter_command;
    }
    const auto k = static_cast<std::size_t>(cfg.zeroshot.perturbations);
    const auto seed = mix_seed(cfg.seed, 4);
    z.val_scores = curvature_scores(val, *backend, k, seed, exec);
    z.test_scores = curvature_scores(test, *backend, k, seed, exec);

    std::vector<bool> val_llm;
    std::size_t llm_count = 0;
    for (const auto& s : val) {
        val_llm.push_back(s.label == Label::llm);
        llm_count += s.label == Label::llm;
    }
    z.fit = fit_threshold(z.val_scores, val_llm);

    const LabelSpace space = LabelSpace::binary();
    const std::size_t majority = llm_count * 2 > val.size() ? 1 : 0;
    std::vector<std::size_t> preds, golds;
    std::size_t majority_hits = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        preds.push_back(classify_zero_shot_score(z.test_scores[i], z.fit.threshold) ? 1 : 0);
        golds.push_back(space.index(space.gold_label(test[i])));
        majority_hits += golds.back() == majority;
        PredictionRecord rec;
        rec.id = test[i].id;
        rec.gold = space.name(golds.back());
        rec.pred = space.name(preds.back());
        const double p = 1.0 / (1.0 + std::exp(-(z.test_scores[i] - z.fit.threshold)));
        rec.scores = {{"human", 1.0 - p}, {"llm", p}};
        z.predictions.push_back(std::move(rec));
    }
    z.majority_accuracy = static_cast<double>(majority_hits) / static_cast<double>(test.size());
    z.report = make_report(preds, golds, test, space, cfg.breakdown);
    z.report.protocol = {{"protocol", "zero-shot"},
                         {"backend", z.backend},
                         {"perturbations", cfg.zeroshot.perturbations},
                         {"threshold", z.fit.threshold},
                         {"val_rows", val.size()},
                         {"test_rows", test.size()},
                         {"seed", cfg.seed},
                         {"corpus_digest", corpus.digest},
                         {"config_digest", cfg.digest()}};
    if (z.backend == "ngram") {
        z.report.protocol["order"] = cfg.zeroshot.order;
        z.report.protocol["add_k"] = cfg.zeroshot.add_k;
    }
    return z;
}

std::string SinglePrediction::to_json() const {
    nlohmann::ordered_json j;
    j["label"] = label;
    nlohmann::ordered_json s = nlohmann::ordered_json::object();
    for (const auto& [name, v] : scores) s[name] = v;
    j["scores"] = s;
    j["ast_available"] = ast_available;
    j["warnings"] = warnings;
    return j.dump();
}

SinglePrediction predict_single(const TrainedModel& model, std::string_view code, std::string_view language) {
    const LanguageTag lang = parse_language(language);
    if (!is_supported(lang)) {
        std::string names;
        for (auto l : supported_languages()) names += (names.empty() ? "" : ", ") + std::string(to_string(l));
        throw validation_error("unsupported language '" + std::string(language) + "'; supported: " + names);
    }
    if (is_blank(code)) throw validation_error("empty input");
    if (!model.schema) throw validation_error("model carries no feature schema; retrain it with this build");

    CodeSample s;
    s.code = strip_comments(code, lang.value);
    if (is_blank(s.code)) throw validation_error("empty input (only comments)");
    s.id = content_id(s.code);
    s.language = lang;
    const FeatureVector fv = extract_features(s);
    const std::vector<std::string> labels{""};
    const FeatureMatrix m = apply_schema(*model.schema, std::span(&fv, 1), labels);
    const Prediction p = model.predict(m, Exec::serial).front();

    SinglePrediction out;
    out.label = model.label_space.name(p.label);
    for (std::size_t k = 0; k < p.scores.size(); ++k) out.scores.emplace_back(model.label_space.name(k), p.scores[k]);
    out.ast_available = fv.ast_available;
    if (!fv.ast_available) out.warnings.push_back("unparsable code: prediction uses text features only");
    return out;
}

ArtifactWriter::ArtifactWriter(std::string dir, std::string config_digest)
    : dir_(std::move(dir)), config_digest_(std::move(config_digest)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw io_error("cannot create output directory " + dir_ + ": " + ec.message());
}

void ArtifactWriter::write(const std::string& name, std::string_view contents) {
    write_file((std::filesystem::path(dir_) / name).string(), contents);
    digests_[name] = sha256_hex(contents);
}

void ArtifactWriter::write_json(const std::string& name, nlohmann::ordered_json j) {
    nlohmann::ordered_json out;
    out["config_digest"] = config_digest_;
    for (auto& [k, v] : j.items()) {
        if (k != "config_digest") out[k] = std::move(v);
    }
    write(name, out.dump(2) + "\n");
}

void ArtifactWriter::record(const std::string& name, const std::string& digest) { digests_[name] = digest; }

void ArtifactWriter::finish(const std::string& corpus_digest) const {
    nlohmann::ordered_json j;
    j["config_digest"] = config_digest_;
    j["corpus_digest"] = corpus_digest;
    j["artifacts"] = digests_;
    write_file((std::filesystem::path(dir_) / "manifest.json").string(), j.dump(2) + "\n");
}

void write_corpus_artifacts(ArtifactWriter& out, const PreparedCorpus& corpus) {
    out.write("corpus.jsonl", corpus.to_jsonl());
    std::vector<std::string> labels;
    std::vector<bool> fit;
    for (const auto& s : corpus.samples) {
        labels.emplace_back(to_string(s.label));
        fit.push_back(s.split == Split::train);
    }
    const BuiltMatrix built = build_matrix(corpus.features, labels, fit);
    out.write("features.csv", matrix_to_csv(built.matrix));
    out.write_json("features.schema.json", nlohmann::ordered_json::parse(built.schema.to_json()));
}

void write_evaluation_artifacts(ArtifactWriter& out, const Evaluation& ev) {
    write_file((std::filesystem::path(out.dir()) / "model.json").string(), model_to_json(ev.model));
    out.record("model.json", model_digest(ev.model));
    out.write("predictions.jsonl", predictions_to_jsonl(ev.predictions));
    out.write("test_features.csv", matrix_to_csv(ev.test_matrix));
    out.write_json("eval_report.json", nlohmann::ordered_json::parse(ev.report.to_json()));
    out.write("confusion.csv", ev.report.confusion_csv());
    out.write("eval_table.txt", ev.report.text_table());
    out.write_json("depth_stats.json", {{"mean_ast_depth", ev.depth_stats}});
    if (ev.degradation) out.write_json("degradation.json", nlohmann::ordered_json::parse(ev.degradation->to_json()));
}

}  // namespace codetect
