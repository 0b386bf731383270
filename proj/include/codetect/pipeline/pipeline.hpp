#pragma once

#include "codetect/corpus/qa.hpp"
#include "codetect/corpus/sample.hpp"
#include "codetect/eval/degradation.hpp"
#include "codetect/eval/report.hpp"
#include "codetect/explain/importance.hpp"
#include "codetect/models/model.hpp"
#include "codetect/pipeline/run_config.hpp"
#include "codetect/stylometry/features.hpp"
#include "codetect/stylometry/matrix.hpp"
#include "codetect/zeroshot/curvature.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace codetect {

/// Ingested, QA'd and split corpus with one feature vector per sample.
struct PreparedCorpus {
    std::vector<CodeSample> samples;
    std::vector<FeatureVector> features;  // aligned with samples
    QaReport qa;
    std::string digest;  // SHA-256 of the samples as JSONL

    std::string to_jsonl() const;
};

/// ingest -> QA -> drop unparsable -> featurize -> split.
PreparedCorpus prepare_corpus(const RunConfig& cfg, Exec exec = Exec::parallel);
PreparedCorpus prepare_corpus(std::vector<CodeSample> raw, const RunConfig& cfg, Exec exec = Exec::parallel);

/// Indices of samples the task trains and evaluates on. Binary and
/// attribution leave hybrids out; ternary keeps everything.
std::vector<std::size_t> task_rows(std::span<const CodeSample> samples, Task task);
std::vector<std::size_t> rows_in_split(std::span<const CodeSample> samples, std::span<const std::size_t> rows,
                                       Split split);

/// Matrix over `rows` of the corpus with gold labels named in `space`.
FeatureMatrix corpus_matrix(const PreparedCorpus& corpus, std::span<const std::size_t> rows,
                            const FeatureSchema& schema, const LabelSpace& space);

struct TrainOutcome {
    TrainedModel model;
    FeatureMatrix train_matrix;
    std::vector<std::size_t> train_rows;
};

/// Fits the feature schema and the model on the given corpus rows.
TrainOutcome train_on_rows(const PreparedCorpus& corpus, std::span<const std::size_t> rows, const LabelSpace& space,
                           const RunConfig& cfg, Exec exec = Exec::parallel);

/// Trains on the train split of the task rows (the in-domain protocol).
TrainOutcome train_stage(const PreparedCorpus& corpus, const RunConfig& cfg, Exec exec = Exec::parallel);

struct Evaluation {
    TrainedModel model;
    FeatureMatrix test_matrix;
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
    EvalReport report;
    std::vector<PredictionRecord> predictions;
    std::optional<DegradationCurve> degradation;  // binary task with hybrid samples
    nlohmann::ordered_json depth_stats;
};

/// Trains (unless `pretrained` is given) and scores the held-out rows under
/// the configured protocol.
Evaluation run_evaluation(const PreparedCorpus& corpus, const RunConfig& cfg,
                          const TrainedModel* pretrained = nullptr, Exec exec = Exec::parallel);

/// Mean AST depth per split and label over rows with a parse tree.
nlohmann::ordered_json depth_statistics(const PreparedCorpus& corpus, std::span<const std::size_t> rows,
                                        const LabelSpace& space);

ImportanceReport explain_model(const TrainedModel& model, const FeatureMatrix& m, const RunConfig& cfg,
                               Exec exec = Exec::parallel);

struct ZeroShotEvaluation {
    std::string backend;  // "ngram" or the adapter command
    ThresholdFit fit;
    std::vector<double> val_scores;
    std::vector<double> test_scores;
    EvalReport report;
    std::vector<PredictionRecord> predictions;
    double majority_accuracy = 0;  // val majority class applied to test
    std::string to_json() const;
};

/// Likelihood model from train-split code (both classes), threshold from val, scored on test.
ZeroShotEvaluation run_zeroshot(const PreparedCorpus& corpus, const RunConfig& cfg, Exec exec = Exec::parallel);

/// Report over an externally produced predictions file. Records are joined
/// to `samples` by id for the breakdowns; a missing id or a gold label that
/// disagrees with the sample is a validation error naming the id.
EvalReport score_external(std::span<const CodeSample> samples, std::span<const PredictionRecord> predictions,
                          const RunConfig& cfg);

struct SinglePrediction {
    std::string label;
    std::vector<std::pair<std::string, double>> scores;
    bool ast_available = false;
    std::vector<std::string> warnings;
    std::string to_json() const;
};

/// Classifies one snippet. Throws validation errors for empty input and for
/// languages without a grammar.
SinglePrediction predict_single(const TrainedModel& model, std::string_view code, std::string_view language);

/// Artifact writers. Every JSON artifact carries the config digest;
/// manifest.json lists digests of the rest.
class ArtifactWriter {
public:
    ArtifactWriter(std::string dir, std::string config_digest);
    const std::string& dir() const { return dir_; }
    void write(const std::string& name, std::string_view contents);
    void write_json(const std::string& name, nlohmann::ordered_json j);
    /// Records a digest without rewriting (used for the timestamped model file).
    void record(const std::string& name, const std::string& digest);
    void finish(const std::string& corpus_digest) const;

private:
    std::string dir_;
    std::string config_digest_;
    std::map<std::string, std::string> digests_;
};

void write_corpus_artifacts(ArtifactWriter& out, const PreparedCorpus& corpus);
void write_evaluation_artifacts(ArtifactWriter& out, const Evaluation& ev);

}  // namespace codetect
