#include "codetect/models/label_space.hpp"

#include "codetect/common.hpp"

#include <algorithm>
#include <set>

namespace codetect {

std::string_view to_string(Task t) {
    switch (t) {
        case Task::binary: return "binary";
        case Task::attribution: return "attribution";
        case Task::ternary: return "ternary";
    }
    return "binary";
}

Task parse_task(std::string_view text) {
    if (text == "binary") return Task::binary;
    if (text == "attribution" || text == "multiclass") return Task::attribution;
    if (text == "ternary") return Task::ternary;
    throw validation_error("unknown task '" + std::string(text) + "' (expected binary, attribution or ternary)");
}

LabelSpace::LabelSpace(Task task, std::vector<std::string> labels) : task_(task), labels_(std::move(labels)) {
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) throw validation_error("duplicate label '" + l + "' in label space");
    }
    if (labels_.size() < 2) throw validation_error("a label space needs at least two labels");
}

LabelSpace LabelSpace::binary() { return {Task::binary, {"human", "llm"}}; }

LabelSpace LabelSpace::ternary() { return {Task::ternary, {"human", "llm", "hybrid"}}; }

LabelSpace LabelSpace::attribution(std::span<const CodeSample> samples) {
    std::vector<std::string> labels{"human"};
    for (Generator g : {Generator::gpt4o, Generator::codellama, Generator::llama31, Generator::codeqwen15,
                        Generator::nxcode}) {
        labels.emplace_back(to_string(g));
    }
    std::set<std::string> extra;
    for (const auto& s : samples) {
        if (s.generator && s.generator->value == Generator::other) extra.insert(name_of(*s.generator));
    }
    for (const auto& e : extra) {
        if (std::find(labels.begin(), labels.end(), e) == labels.end()) labels.push_back(e);
    }
    return {Task::attribution, std::move(labels)};
}

LabelSpace LabelSpace::for_task(Task task, std::span<const CodeSample> samples) {
    switch (task) {
        case Task::binary: return binary();
        case Task::attribution: return attribution(samples);
        case Task::ternary: return ternary();
    }
    return binary();
}

std::optional<std::size_t> LabelSpace::find(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return i;
    }
    return std::nullopt;
}

std::size_t LabelSpace::index(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw validation_error("label '" + std::string(label) + "' is not in the " + std::string(to_string(task_)) +
                           " label space");
}

std::string LabelSpace::gold_label(const CodeSample& s) const {
    switch (task_) {
        case Task::binary: return s.label == Label::human ? "human" : "llm";
        case Task::ternary: return std::string(to_string(s.label));
        case Task::attribution:
            if (s.label == Label::human) return "human";
            if (!s.generator) throw validation_error("sample " + s.id + " has no generator");
            return name_of(*s.generator);
    }
    return "human";
}

}  // namespace codetect
