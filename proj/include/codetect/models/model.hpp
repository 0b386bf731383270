#pragma once

#include "codetect/models/gbdt.hpp"
#include "codetect/models/label_space.hpp"
#include "codetect/models/linear.hpp"
#include "codetect/parallel.hpp"
#include "codetect/stylometry/matrix.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace codetect {

inline constexpr std::string_view kModelMagic = "CODETECT-MODEL";
inline constexpr int kModelFormatVersion = 2;

enum class ModelKind { linear, gbdt };
std::string_view to_string(ModelKind k);
ModelKind parse_model_kind(std::string_view text);

struct ModelConfig {
    ModelKind kind = ModelKind::gbdt;
    LinearConfig linear;
    GbdtConfig gbdt;

    void validate() const;
    nlohmann::ordered_json to_json() const;
};

struct Prediction {
    std::size_t label = 0;
    std::vector<double> scores;  // label-space order
};

/// Index of the largest score; the first one wins ties.
std::size_t argmax_first(std::span<const double> scores);

struct TrainedModel {
    ModelKind kind = ModelKind::gbdt;
    LabelSpace label_space;
    std::vector<std::string> feature_names;
    std::string feature_schema_hash;
    // Medians for featurizing single samples; absent in migrated files.
    std::optional<FeatureSchema> schema;
    std::variant<LinearModel, GbdtModel> params;
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
    // Load-time notes such as format migrations; not persisted.
    std::vector<std::string> notes;

    std::vector<double> scores(std::span<const double> row) const;
    Prediction predict_row(std::span<const double> row) const;
    /// Throws if the matrix schema hash differs from the model's.
    std::vector<Prediction> predict(const FeatureMatrix& m, Exec exec = Exec::parallel) const;
    void check_schema(const FeatureMatrix& m) const;
};

/// Row labels of `m` mapped into `space`; throws for labels outside it.
std::vector<std::size_t> encode_labels(const FeatureMatrix& m, const LabelSpace& space);

TrainedModel train_linear(const FeatureMatrix& m, const LabelSpace& space, const LinearConfig& cfg,
                          Exec exec = Exec::parallel);
TrainedModel train_gbdt(const FeatureMatrix& m, const LabelSpace& space, const GbdtConfig& cfg,
                        Exec exec = Exec::parallel);
TrainedModel train_model(const FeatureMatrix& m, const LabelSpace& space, const ModelConfig& cfg,
                         Exec exec = Exec::parallel);

std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(std::string_view text);
void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

/// SHA-256 of the serialized model with the training timestamp removed.
std::string model_digest(const TrainedModel& model);

}  // namespace codetect
