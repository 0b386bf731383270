#pragma once

#include "codetect/corpus/sample.hpp"
#include "codetect/eval/metrics.hpp"
#include "codetect/models/label_space.hpp"

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace codetect {

inline constexpr std::size_t kLowSupport = 10;

enum class GroupKey { language, source, generator };
std::string_view to_string(GroupKey k);
GroupKey parse_group_key(std::string_view text);
/// The sample's value on the axis; "(none)" for human samples on the
/// generator axis.
std::string group_value(const CodeSample& s, GroupKey key);

struct GroupResult {
    Metrics metrics;
    ConfusionMatrix confusion;
    bool low_support = false;  // n < 10
};

using Breakdown = std::map<std::string, GroupResult>;

Breakdown breakdown(std::span<const std::size_t> preds, std::span<const std::size_t> golds,
                    std::span<const CodeSample> samples, GroupKey key, const LabelSpace& space);

struct EvalReport {
    LabelSpace label_space;
    Metrics overall;
    ConfusionMatrix confusion;
    std::map<std::string, Breakdown> groups;  // by axis name
    nlohmann::ordered_json protocol = nlohmann::ordered_json::object();

    std::string to_json() const;
    std::string confusion_csv() const;
    /// Rows of P/R/F/A scaled by 100 with two decimals.
    std::string text_table() const;
};

EvalReport make_report(std::span<const std::size_t> preds, std::span<const std::size_t> golds,
                       std::span<const CodeSample> samples, const LabelSpace& space,
                       std::span<const GroupKey> keys = {});

/// One line of the predictions exchange format {id, gold, pred, scores}.
struct PredictionRecord {
    std::string id;
    std::string gold;
    std::string pred;
    std::vector<std::pair<std::string, double>> scores;  // label-space order
};

std::string predictions_to_jsonl(std::span<const PredictionRecord> records);
std::vector<PredictionRecord> predictions_from_jsonl(std::string_view text);

/// Metrics over a predictions file; labels must belong to `space`.
Metrics score_predictions(std::span<const PredictionRecord> records, const LabelSpace& space);

}  // namespace codetect
