#include "codetect/explain/importance.hpp"

#include "codetect/common.hpp"
#include "codetect/eval/metrics.hpp"
#include "codetect/random.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

namespace codetect {

std::string_view to_string(ImportanceMetric m) { return m == ImportanceMetric::accuracy ? "accuracy" : "macro_f1"; }

ImportanceMetric parse_importance_metric(std::string_view text) {
    if (text == "accuracy") return ImportanceMetric::accuracy;
    if (text == "macro_f1" || text == "f1") return ImportanceMetric::macro_f1;
    throw validation_error("unknown importance metric '" + std::string(text) + "' (expected macro_f1 or accuracy)");
}

namespace {

void rank(ImportanceReport& r, const std::vector<std::string>& names) {
    r.ranked.clear();
    for (std::size_t i = 0; i < names.size(); ++i) r.ranked.emplace_back(names[i], r.scores[i]);
    std::stable_sort(r.ranked.begin(), r.ranked.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
}

double metric_value(const ConfusionMatrix& cm, ImportanceMetric metric) {
    const Metrics m = macro_metrics(cm);
    return metric == ImportanceMetric::accuracy ? m.accuracy : m.f1;
}

}  // namespace

ImportanceReport gain_importance(const TrainedModel& model) {
    const auto* gbdt = std::get_if<GbdtModel>(&model.params);
    if (!gbdt) throw validation_error("gain importance needs a tree ensemble; use permutation importance for linear models");
    ImportanceReport r;
    r.method = ImportanceMethod::gain;
    r.scores = gbdt->split_gain(model.feature_names.size());
    r.total_gain = std::accumulate(r.scores.begin(), r.scores.end(), 0.0);
    if (r.total_gain > 0) {
        for (auto& s : r.scores) s /= r.total_gain;
    }
    rank(r, model.feature_names);
    return r;
}

ImportanceReport permutation_importance(const TrainedModel& model, const FeatureMatrix& m, ImportanceMetric metric,
                                        int repeats, std::uint64_t seed, Exec exec) {
    if (repeats < 1) throw validation_error("permutation importance needs at least one repeat");
    model.check_schema(m);
    const auto golds = encode_labels(m, model.label_space);
    const std::size_t k = model.label_space.size();

    ImportanceReport r;
    r.method = ImportanceMethod::permutation;
    r.metric = metric;
    r.repeats = repeats;
    r.seed = seed;
    {
        ConfusionMatrix cm(k);
        for (std::size_t i = 0; i < m.rows(); ++i) cm.add(golds[i], model.predict_row(m.row(i)).label);
        r.baseline = metric_value(cm, metric);
    }

    r.scores.assign(m.cols(), 0.0);
    const auto nf = static_cast<std::ptrdiff_t>(m.cols());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (std::ptrdiff_t fi = 0; fi < nf; ++fi) {
        const auto f = static_cast<std::size_t>(fi);
        std::vector<double> column(m.rows());
        std::vector<double> row(m.cols());
        double drop = 0;
        for (int rep = 0; rep < repeats; ++rep) {
            for (std::size_t i = 0; i < m.rows(); ++i) column[i] = m.at(i, f);
            Rng rng(mix_seed(mix_seed(seed, f), static_cast<std::uint64_t>(rep)));
            shuffle(std::span<double>(column), rng);
            ConfusionMatrix cm(k);
            for (std::size_t i = 0; i < m.rows(); ++i) {
                const auto src = m.row(i);
                std::copy(src.begin(), src.end(), row.begin());
                row[f] = column[i];
                cm.add(golds[i], model.predict_row(row).label);
            }
            drop += r.baseline - metric_value(cm, metric);
        }
        r.scores[f] = drop / repeats;
    }
    rank(r, model.feature_names);
    return r;
}

std::string ImportanceReport::to_json() const {
    nlohmann::ordered_json j;
    j["method"] = method == ImportanceMethod::gain ? "gain" : "permutation";
    if (method == ImportanceMethod::permutation) {
        j["metric"] = to_string(metric);
        j["baseline"] = baseline;
        j["repeats"] = repeats;
        j["seed"] = seed;
    } else {
        j["total_gain"] = total_gain;
    }
    auto& arr = j["ranked"] = nlohmann::ordered_json::array();
    for (const auto& [name, score] : ranked) arr.push_back({{"feature", name}, {"score", score}});
    return j.dump(2) + "\n";
}

std::string ImportanceReport::to_csv() const {
    std::string out = "feature,score\n";
    for (const auto& [name, score] : ranked) out += name + "," + format_double(score) + "\n";
    return out;
}

}  // namespace codetect
