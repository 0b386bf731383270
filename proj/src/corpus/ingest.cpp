#include "codetect/corpus/ingest.hpp"

#include <fstream>

#include <json.hpp>

namespace codetect {

using json = nlohmann::ordered_json;

namespace {

std::string required_string(const json& rec, const char* field, std::size_t line) {
    auto it = rec.find(field);
    if (it == rec.end() || it->is_null()) throw IngestError(line, std::string("missing field '") + field + "'");
    if (!it->is_string()) throw IngestError(line, std::string("field '") + field + "' must be a string");
    return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& rec, const char* field, std::size_t line) {
    auto it = rec.find(field);
    if (it == rec.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw IngestError(line, std::string("field '") + field + "' must be a string");
    return it->get<std::string>();
}

CodeSample parse_record(const std::string& text, std::size_t line) {
    json rec;
    try {
        rec = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IngestError(line, std::string("malformed JSON: ") + e.what());
    }
    if (!rec.is_object()) throw IngestError(line, "record is not a JSON object");

    CodeSample s;
    s.code = required_string(rec, "code", line);
    s.language = parse_language(required_string(rec, "language", line));
    const std::string label = required_string(rec, "label", line);
    try {
        s.label = parse_label(label);
        if (auto split = optional_string(rec, "split", line)) s.split = parse_split(*split);
    } catch (const Error& e) {
        throw IngestError(line, e.what());
    }
    s.source = parse_source(optional_string(rec, "source", line).value_or("unknown"));
    if (auto gen = optional_string(rec, "generator", line); gen && !gen->empty()) {
        s.generator = parse_generator(*gen);
    }
    if (auto it = rec.find("human_fraction"); it != rec.end() && !it->is_null()) {
        if (!it->is_number()) throw IngestError(line, "field 'human_fraction' must be a number");
        s.human_fraction = it->get<double>();
    }
    if (auto id = optional_string(rec, "id", line); id && !id->empty()) {
        s.id = *id;
    } else {
        s.id = content_id(s.code);
    }
    try {
        check_invariants(s);
    } catch (const Error& e) {
        throw IngestError(line, e.what());
    }
    return s;
}

}  // namespace

std::vector<CodeSample> ingest_jsonl(std::istream& in) {
    std::vector<CodeSample> out;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (is_blank(text)) continue;
        out.push_back(parse_record(text, line));
    }
    return out;
}

std::vector<CodeSample> ingest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open corpus " + path);
    return ingest_jsonl(in);
}

std::string to_jsonl_line(const CodeSample& s) {
    json rec;
    rec["id"] = s.id;
    rec["code"] = s.code;
    rec["language"] = name_of(s.language);
    rec["source"] = name_of(s.source);
    rec["label"] = std::string(to_string(s.label));
    if (s.generator) rec["generator"] = name_of(*s.generator);
    if (s.split) rec["split"] = std::string(to_string(*s.split));
    if (s.human_fraction) rec["human_fraction"] = *s.human_fraction;
    return rec.dump(-1, ' ', false, json::error_handler_t::replace);
}

void write_jsonl(const std::string& path, const std::vector<CodeSample>& samples) {
    std::string out;
    for (const auto& s : samples) {
        out += to_jsonl_line(s);
        out += '\n';
    }
    write_file(path, out);
}

}  // namespace codetect
