#include "codetect/eval/ood.hpp"

#include "codetect/common.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace codetect {

nlohmann::ordered_json OodProtocol::to_json() const {
    nlohmann::ordered_json j;
    j["generator"] = generators;
    j["source"] = sources;
    j["language"] = languages;
    return j;
}

OodProtocol OodProtocol::from_json(const nlohmann::json& j) {
    OodProtocol p;
    for (const auto& [key, value] : j.items()) {
        auto values = value.get<std::set<std::string>>();
        if (key == "generator") {
            for (const auto& v : values) p.generators.insert(name_of(parse_generator(v)));
        } else if (key == "source") {
            for (const auto& v : values) p.sources.insert(name_of(parse_source(v)));
        } else if (key == "language") {
            for (const auto& v : values) p.languages.insert(name_of(parse_language(v)));
        } else {
            throw validation_error("unknown hold-out axis '" + key + "' (expected generator, source or language)");
        }
    }
    return p;
}

namespace {

struct Axis {
    std::string name;
    const std::set<std::string>* held;
    std::function<std::optional<std::string>(const CodeSample&)> value;
};

std::vector<Axis> axes(const OodProtocol& p) {
    std::vector<Axis> out;
    if (!p.generators.empty()) {
        out.push_back({"generator", &p.generators, [](const CodeSample& s) -> std::optional<std::string> {
                           if (!s.generator) return std::nullopt;
                           return name_of(*s.generator);
                       }});
    }
    if (!p.sources.empty()) {
        out.push_back({"source", &p.sources, [](const CodeSample& s) -> std::optional<std::string> {
                           return name_of(s.source);
                       }});
    }
    if (!p.languages.empty()) {
        out.push_back({"language", &p.languages, [](const CodeSample& s) -> std::optional<std::string> {
                           return name_of(s.language);
                       }});
    }
    return out;
}

}  // namespace

OodPartition partition_ood(std::span<const CodeSample> samples, const OodProtocol& protocol) {
    if (protocol.empty()) throw validation_error("an OOD protocol must hold out at least one value");
    const auto ax = axes(protocol);
    for (const auto& a : ax) {
        for (const auto& v : *a.held) {
            const bool present = std::any_of(samples.begin(), samples.end(), [&](const CodeSample& s) {
                auto sv = a.value(s);
                return sv && *sv == v;
            });
            if (!present) throw validation_error("held-out " + a.name + " '" + v + "' does not occur in the corpus");
        }
    }
    OodPartition part;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        bool all_held = true;
        bool any_held = false;
        for (const auto& a : ax) {
            auto v = a.value(samples[i]);
            const bool held = v && a.held->count(*v) > 0;
            all_held = all_held && held;
            any_held = any_held || held;
        }
        if (all_held) {
            part.test.push_back(i);
        } else if (!any_held && samples[i].split == Split::train) {
            part.train.push_back(i);
        }
    }
    return part;
}

void check_ood_disjoint(std::span<const CodeSample> samples, const OodPartition& part, const OodProtocol& protocol) {
    for (const auto& a : axes(protocol)) {
        std::set<std::string> train_values, test_values;
        for (auto i : part.train) {
            if (auto v = a.value(samples[i])) train_values.insert(*v);
        }
        for (auto i : part.test) {
            if (auto v = a.value(samples[i])) test_values.insert(*v);
        }
        for (const auto& v : test_values) {
            if (train_values.count(v)) {
                throw stage_error("OOD leak: " + a.name + " '" + v + "' appears in both train and test");
            }
        }
    }
}

}  // namespace codetect
