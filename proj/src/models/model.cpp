#include "codetect/models/model.hpp"

#include "codetect/common.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <map>
#include <set>

namespace codetect {

std::string_view to_string(ModelKind k) { return k == ModelKind::linear ? "linear" : "gbdt"; }

ModelKind parse_model_kind(std::string_view text) {
    if (text == "linear" || text == "svm") return ModelKind::linear;
    if (text == "gbdt" || text == "boosted") return ModelKind::gbdt;
    throw validation_error("unknown model kind '" + std::string(text) + "' (expected linear or gbdt)");
}

void ModelConfig::validate() const {
    linear.validate();
    gbdt.validate();
}

nlohmann::ordered_json ModelConfig::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = to_string(kind);
    if (kind == ModelKind::linear) {
        j["linear"] = linear.to_json();
    } else {
        j["gbdt"] = gbdt.to_json();
    }
    return j;
}

std::size_t argmax_first(std::span<const double> scores) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < scores.size(); ++k) {
        if (scores[k] > scores[best]) best = k;
    }
    return best;
}

std::vector<double> TrainedModel::scores(std::span<const double> row) const {
    return std::visit([&](const auto& p) { return p.scores(row); }, params);
}

Prediction TrainedModel::predict_row(std::span<const double> row) const {
    Prediction p;
    p.scores = scores(row);
    p.label = argmax_first(p.scores);
    return p;
}

void TrainedModel::check_schema(const FeatureMatrix& m) const {
    if (m.schema_hash() != feature_schema_hash) {
        throw validation_error("feature schema mismatch: matrix schema " + m.schema_hash() +
                               " does not match model schema " + feature_schema_hash);
    }
}

std::vector<Prediction> TrainedModel::predict(const FeatureMatrix& m, Exec exec) const {
    check_schema(m);
    std::vector<Prediction> out(m.rows());
    const auto n = static_cast<std::ptrdiff_t>(m.rows());
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (std::ptrdiff_t r = 0; r < n; ++r) out[static_cast<std::size_t>(r)] = predict_row(m.row(static_cast<std::size_t>(r)));
    return out;
}

std::vector<std::size_t> encode_labels(const FeatureMatrix& m, const LabelSpace& space) {
    std::vector<std::size_t> y(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) y[r] = space.index(m.labels[r]);
    return y;
}

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

TrainedModel prepare(const FeatureMatrix& m, const LabelSpace& space, ModelKind kind, std::vector<std::size_t>& y) {
    if (m.rows() == 0) throw stage_error("empty training matrix");
    y = encode_labels(m, space);
    std::set<std::size_t> present(y.begin(), y.end());
    if (present.size() < 2) {
        throw stage_error("degenerate labels: training data has only the class '" + space.name(*present.begin()) + "'");
    }
    TrainedModel model;
    model.kind = kind;
    model.label_space = space;
    model.feature_names = m.feature_names();
    model.feature_schema_hash = m.schema_hash();
    std::map<std::string, std::size_t> counts;
    for (auto k : y) ++counts[space.name(k)];
    model.metadata["training_rows"] = m.rows();
    model.metadata["class_counts"] = counts;
    model.metadata["trained_at"] = utc_timestamp();
    return model;
}

}  // namespace

TrainedModel train_linear(const FeatureMatrix& m, const LabelSpace& space, const LinearConfig& cfg, Exec exec) {
    std::vector<std::size_t> y;
    TrainedModel model = prepare(m, space, ModelKind::linear, y);
    LinearModel params = fit_linear(m, y, space.size(), cfg, exec);
    model.metadata["config"] = cfg.to_json();
    model.metadata["dropped_constant_features"] = params.scaler.dropped;
    if (params.prior_only) model.metadata["prior_only"] = true;
    model.params = std::move(params);
    return model;
}

TrainedModel train_gbdt(const FeatureMatrix& m, const LabelSpace& space, const GbdtConfig& cfg, Exec exec) {
    std::vector<std::size_t> y;
    TrainedModel model = prepare(m, space, ModelKind::gbdt, y);
    model.params = fit_gbdt(m, y, space.size(), cfg, exec);
    model.metadata["config"] = cfg.to_json();
    return model;
}

TrainedModel train_model(const FeatureMatrix& m, const LabelSpace& space, const ModelConfig& cfg, Exec exec) {
    return cfg.kind == ModelKind::linear ? train_linear(m, space, cfg.linear, exec)
                                         : train_gbdt(m, space, cfg.gbdt, exec);
}

std::string model_to_json(const TrainedModel& model) {
    nlohmann::ordered_json j;
    j["magic"] = kModelMagic;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = to_string(model.kind);
    j["label_space"] = {{"task", to_string(model.label_space.task())}, {"labels", model.label_space.labels()}};
    j["feature_schema_hash"] = model.feature_schema_hash;
    j["feature_names"] = model.feature_names;
    if (model.schema) {
        j["feature_schema"] = nlohmann::ordered_json::parse(model.schema->to_json());
    } else {
        j["feature_schema"] = nullptr;
    }
    j["metadata"] = model.metadata;
    j["params"] = std::visit([](const auto& p) { return p.to_json(); }, model.params);
    return j.dump() + "\n";
}

namespace {

Task infer_task(const std::vector<std::string>& labels) {
    if (labels == LabelSpace::binary().labels()) return Task::binary;
    if (labels == LabelSpace::ternary().labels()) return Task::ternary;
    return Task::attribution;
}

void check_params(const TrainedModel& m) {
    const auto d = m.feature_names.size();
    if (const auto* g = std::get_if<GbdtModel>(&m.params)) {
        if (g->n_classes != m.label_space.size()) throw std::runtime_error("class count does not match label space");
        for (const auto& b : g->boosters) {
            for (const auto& t : b.trees) {
                for (const auto& n : t.nodes) {
                    if (!n.is_leaf() && static_cast<std::size_t>(n.feature) >= d) {
                        throw std::runtime_error("split feature index out of range");
                    }
                }
            }
        }
    } else {
        const auto& l = std::get<LinearModel>(m.params);
        if (l.n_classes != m.label_space.size()) throw std::runtime_error("class count does not match label space");
        for (auto k : l.scaler.kept) {
            if (k >= d) throw std::runtime_error("standardized feature index out of range");
        }
        const std::size_t width = l.rff ? l.rff->dims() : l.scaler.kept.size();
        for (const auto& w : l.weights) {
            if (w.size() != width) throw std::runtime_error("weight vector has the wrong width");
        }
    }
}

}  // namespace

TrainedModel model_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception&) {
        throw validation_error("corrupt model: not a readable model container");
    }
    if (!j.is_object() || j.value("magic", "") != kModelMagic) {
        throw validation_error("corrupt model: missing " + std::string(kModelMagic) + " header");
    }
    if (!j.contains("format_version") || !j["format_version"].is_number_integer()) {
        throw validation_error("corrupt model: missing format version");
    }
    const int version = j["format_version"].get<int>();
    if (version < 1 || version > kModelFormatVersion) {
        throw validation_error("unsupported model format version " + std::to_string(version) +
                               "; this build reads versions 1 to " + std::to_string(kModelFormatVersion));
    }
    TrainedModel m;
    try {
        m.kind = parse_model_kind(j.at("kind").get<std::string>());
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        if (version == 1) {
            auto labels = j.at("labels").get<std::vector<std::string>>();
            const Task task = infer_task(labels);
            m.label_space = LabelSpace(task, std::move(labels));
            m.feature_schema_hash = schema_hash(m.feature_names);
            m.metadata["migrated_from_format_version"] = 1;
            m.notes.push_back("migrated model from format version 1 to " + std::to_string(kModelFormatVersion));
        } else {
            const auto& ls = j.at("label_space");
            m.label_space = LabelSpace(parse_task(ls.at("task").get<std::string>()),
                                       ls.at("labels").get<std::vector<std::string>>());
            m.feature_schema_hash = j.at("feature_schema_hash").get<std::string>();
            if (m.feature_schema_hash != schema_hash(m.feature_names)) {
                throw std::runtime_error("schema hash does not match feature names");
            }
            if (!j.at("feature_schema").is_null()) m.schema = FeatureSchema::from_json(j["feature_schema"].dump());
            m.metadata = nlohmann::ordered_json::parse(text).at("metadata");  // keeps key order
        }
        if (m.kind == ModelKind::linear) {
            m.params = LinearModel::from_json(j.at("params"));
        } else {
            m.params = GbdtModel::from_json(j.at("params"));
        }
        check_params(m);
    } catch (const Error& e) {
        throw validation_error(std::string("corrupt model: ") + e.what());
    } catch (const std::exception& e) {
        throw validation_error(std::string("corrupt model: ") + e.what());
    }
    return m;
}

void save_model(const TrainedModel& model, const std::string& path) { write_file(path, model_to_json(model)); }

TrainedModel load_model(const std::string& path) { return model_from_json(read_file(path)); }

std::string model_digest(const TrainedModel& model) {
    TrainedModel copy = model;
    copy.metadata.erase("trained_at");
    return sha256_hex(model_to_json(copy));
}

}  // namespace codetect
