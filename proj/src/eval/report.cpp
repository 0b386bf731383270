#include "codetect/eval/report.hpp"

#include "codetect/common.hpp"

#include <cstdio>
#include <sstream>

namespace codetect {

std::string_view to_string(GroupKey k) {
    switch (k) {
        case GroupKey::language: return "language";
        case GroupKey::source: return "source";
        case GroupKey::generator: return "generator";
    }
    return "language";
}

GroupKey parse_group_key(std::string_view text) {
    if (text == "language") return GroupKey::language;
    if (text == "source") return GroupKey::source;
    if (text == "generator") return GroupKey::generator;
    throw validation_error("unknown breakdown key '" + std::string(text) + "' (expected language, source or generator)");
}

std::string group_value(const CodeSample& s, GroupKey key) {
    switch (key) {
        case GroupKey::language: return name_of(s.language);
        case GroupKey::source: return name_of(s.source);
        case GroupKey::generator: return s.generator ? name_of(*s.generator) : "(none)";
    }
    return {};
}

Breakdown breakdown(std::span<const std::size_t> preds, std::span<const std::size_t> golds,
                    std::span<const CodeSample> samples, GroupKey key, const LabelSpace& space) {
    if (preds.size() != samples.size() || golds.size() != samples.size()) {
        throw validation_error("samples are not aligned with predictions");
    }
    std::map<std::string, ConfusionMatrix> cms;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        auto [it, inserted] = cms.try_emplace(group_value(samples[i], key), space.size());
        it->second.add(golds[i], preds[i]);
    }
    Breakdown out;
    for (auto& [value, cm] : cms) {
        GroupResult g;
        g.metrics = macro_metrics(cm);
        g.confusion = std::move(cm);
        g.low_support = g.metrics.n < kLowSupport;
        out.emplace(value, std::move(g));
    }
    return out;
}

EvalReport make_report(std::span<const std::size_t> preds, std::span<const std::size_t> golds,
                       std::span<const CodeSample> samples, const LabelSpace& space, std::span<const GroupKey> keys) {
    EvalReport r;
    r.label_space = space;
    r.confusion = confusion(preds, golds, space.size());
    r.overall = macro_metrics(r.confusion);
    for (GroupKey k : keys) r.groups[std::string(to_string(k))] = breakdown(preds, golds, samples, k, space);
    return r;
}

namespace {

nlohmann::ordered_json metrics_json(const Metrics& m) {
    nlohmann::ordered_json j;
    if (!m.single_class_gold) j["P"] = m.precision;
    j["R"] = m.recall;
    j["F"] = m.f1;
    j["A"] = m.accuracy;
    j["n"] = m.n;
    if (m.single_class_gold) j["note"] = "single-class gold";
    return j;
}

nlohmann::ordered_json confusion_json(const ConfusionMatrix& cm) {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t g = 0; g < cm.classes(); ++g) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t p = 0; p < cm.classes(); ++p) row.push_back(cm.at(g, p));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * v);
    return buf;
}

}  // namespace

std::string EvalReport::to_json() const {
    nlohmann::ordered_json j;
    j["task"] = to_string(label_space.task());
    j["labels"] = label_space.labels();
    j["overall"] = metrics_json(overall);
    const auto classes = per_class_metrics(confusion);
    auto& pc = j["per_class"] = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < classes.size(); ++c) {
        pc[label_space.name(c)] = {{"P", classes[c].precision},
                                   {"R", classes[c].recall},
                                   {"F", classes[c].f1},
                                   {"support", classes[c].support},
                                   {"zero_division", classes[c].zero_division}};
    }
    j["confusion"] = confusion_json(confusion);
    auto& gj = j["groups"] = nlohmann::ordered_json::object();
    for (const auto& [axis, groups] : groups) {
        auto& aj = gj[axis] = nlohmann::ordered_json::object();
        for (const auto& [value, g] : groups) {
            auto m = metrics_json(g.metrics);
            m["low_support"] = g.low_support;
            m["confusion"] = confusion_json(g.confusion);
            aj[value] = std::move(m);
        }
    }
    j["protocol"] = protocol;
    return j.dump(2) + "\n";
}

std::string EvalReport::confusion_csv() const {
    std::string out = "gold\\pred";
    for (const auto& l : label_space.labels()) out += "," + l;
    out += '\n';
    for (std::size_t g = 0; g < confusion.classes(); ++g) {
        out += label_space.name(g);
        for (std::size_t p = 0; p < confusion.classes(); ++p) out += "," + std::to_string(confusion.at(g, p));
        out += '\n';
    }
    return out;
}

std::string EvalReport::text_table() const {
    std::ostringstream out;
    char line[160];
    auto row = [&](const std::string& name, const Metrics& m, const char* flag) {
        const std::string p = m.single_class_gold ? "-" : pct(m.precision);
        std::snprintf(line, sizeof line, "%-28s %7zu %7s %7s %7s %7s%s\n", name.c_str(), m.n, p.c_str(),
                      pct(m.recall).c_str(), pct(m.f1).c_str(), pct(m.accuracy).c_str(), flag);
        out << line;
    };
    std::snprintf(line, sizeof line, "%-28s %7s %7s %7s %7s %7s\n", "group", "n", "P", "R", "F", "A");
    out << line;
    row("overall", overall, "");
    for (const auto& [axis, groups] : groups) {
        for (const auto& [value, g] : groups) row(axis + "=" + value, g.metrics, g.low_support ? "  (low support)" : "");
    }
    if (overall.single_class_gold) out << "note: single-class gold, precision omitted\n";
    return out.str();
}

std::string predictions_to_jsonl(std::span<const PredictionRecord> records) {
    std::string out;
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["id"] = r.id;
        j["gold"] = r.gold;
        j["pred"] = r.pred;
        auto& s = j["scores"] = nlohmann::ordered_json::object();
        for (const auto& [label, v] : r.scores) s[label] = v;
        out += j.dump() + "\n";
    }
    return out;
}

std::vector<PredictionRecord> predictions_from_jsonl(std::string_view text) {
    std::vector<PredictionRecord> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line)) continue;
        try {
            const auto j = nlohmann::ordered_json::parse(line);
            PredictionRecord r;
            r.id = j.at("id").get<std::string>();
            r.gold = j.at("gold").get<std::string>();
            r.pred = j.at("pred").get<std::string>();
            for (const auto& [label, v] : j.at("scores").items()) r.scores.emplace_back(label, v.get<double>());
            out.push_back(std::move(r));
        } catch (const nlohmann::json::exception& e) {
            throw validation_error("predictions line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

Metrics score_predictions(std::span<const PredictionRecord> records, const LabelSpace& space) {
    std::vector<std::size_t> preds, golds;
    for (const auto& r : records) {
        golds.push_back(space.index(r.gold));
        preds.push_back(space.index(r.pred));
    }
    return macro_metrics(preds, golds, space);
}

}  // namespace codetect
