#include "codetect/corpus/sample.hpp"

#include "codetect/common.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace codetect {
namespace {

constexpr std::array<std::string_view, 9> kLanguageNames = {
    "python", "java", "cpp", "csharp", "go", "javascript", "php", "ruby", "other"};
constexpr std::array<std::string_view, 6> kSourceNames = {"leetcode", "codeforces", "github",
                                                          "mbpp",     "thevault",   "other"};
constexpr std::array<std::string_view, 3> kLabelNames = {"human", "llm", "hybrid"};
constexpr std::array<std::string_view, 6> kGeneratorNames = {"gpt4o",      "codellama", "llama31",
                                                             "codeqwen15", "nxcode",    "other"};
constexpr std::array<std::string_view, 3> kSplitNames = {"train", "val", "test"};

// Lowercase and keep only alphanumerics plus '+' and '#', so "C++" and "c#"
// survive while "gpt-4o" and "llama3.1" collapse onto their canonical names.
std::string fold(std::string_view text) {
    std::string out;
    for (char c : text) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || c == '+' || c == '#') out.push_back(static_cast<char>(std::tolower(u)));
    }
    return out;
}

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& names, std::string_view folded) {
    for (std::size_t i = 0; i + 1 < N; ++i) {
        if (names[i] == folded) return static_cast<E>(i);
    }
    return std::nullopt;
}

}  // namespace

std::string_view to_string(Language v) { return kLanguageNames[static_cast<std::size_t>(v)]; }
std::string_view to_string(Source v) { return kSourceNames[static_cast<std::size_t>(v)]; }
std::string_view to_string(Label v) { return kLabelNames[static_cast<std::size_t>(v)]; }
std::string_view to_string(Generator v) { return kGeneratorNames[static_cast<std::size_t>(v)]; }
std::string_view to_string(Split v) { return kSplitNames[static_cast<std::size_t>(v)]; }

std::string name_of(const LanguageTag& v) {
    return v.value == Language::other ? (v.tag.empty() ? std::string("other") : v.tag) : std::string(to_string(v.value));
}
std::string name_of(const SourceTag& v) {
    return v.value == Source::other ? (v.tag.empty() ? std::string("other") : v.tag) : std::string(to_string(v.value));
}
std::string name_of(const GeneratorTag& v) {
    return v.value == Generator::other ? (v.tag.empty() ? std::string("other") : v.tag) : std::string(to_string(v.value));
}

LanguageTag parse_language(std::string_view text) {
    const std::string f = fold(text);
    static const std::vector<std::pair<std::string_view, Language>> aliases = {
        {"c++", Language::cpp},        {"cxx", Language::cpp},    {"py", Language::python},
        {"python3", Language::python}, {"c#", Language::csharp},  {"cs", Language::csharp},
        {"golang", Language::go},      {"js", Language::javascript}, {"node", Language::javascript},
        {"rb", Language::ruby}};
    if (auto v = lookup<Language>(kLanguageNames, f)) return {*v, {}};
    for (const auto& [alias, lang] : aliases) {
        if (alias == f) return {lang, {}};
    }
    return {Language::other, std::string(text)};
}

SourceTag parse_source(std::string_view text) {
    const std::string f = fold(text);
    if (auto v = lookup<Source>(kSourceNames, f)) return {*v, {}};
    if (f == "cf") return {Source::codeforces, {}};
    if (f == "vault") return {Source::thevault, {}};
    return {Source::other, std::string(text)};
}

GeneratorTag parse_generator(std::string_view text) {
    const std::string f = fold(text);
    if (auto v = lookup<Generator>(kGeneratorNames, f)) return {*v, {}};
    if (f == "llama318b" || f == "llama3" || f == "llama318binstruct") return {Generator::llama31, {}};
    if (f == "codeqwen" || f == "codeqwen157bchat" || f == "codeqwen157b") return {Generator::codeqwen15, {}};
    if (f.starts_with("nxcode")) return {Generator::nxcode, {}};
    if (f.starts_with("codellama")) return {Generator::codellama, {}};
    return {Generator::other, std::string(text)};
}

Label parse_label(std::string_view text) {
    const std::string f = fold(text);
    if (auto v = lookup<Label>(std::array<std::string_view, 4>{"human", "llm", "hybrid", ""}, f)) return *v;
    if (f == "machine" || f == "machinegenerated" || f == "ai" || f == "generated") return Label::llm;
    throw validation_error("unknown label '" + std::string(text) + "'");
}

Split parse_split(std::string_view text) {
    const std::string f = fold(text);
    if (auto v = lookup<Split>(std::array<std::string_view, 4>{"train", "val", "test", ""}, f)) return *v;
    if (f == "validation" || f == "dev" || f == "valid") return Split::val;
    throw validation_error("unknown split '" + std::string(text) + "'");
}

const std::vector<Language>& supported_languages() {
    static const std::vector<Language> langs = {Language::python, Language::java,       Language::cpp,
                                                Language::csharp, Language::go,         Language::javascript,
                                                Language::php,    Language::ruby};
    return langs;
}

bool is_supported(const LanguageTag& lang) { return lang.value != Language::other; }

void check_invariants(const CodeSample& s) {
    if (s.label == Label::human && s.generator) {
        throw validation_error("generator must be absent for human samples");
    }
    if (s.label != Label::human && !s.generator) {
        throw validation_error("generator required for " + std::string(to_string(s.label)));
    }
    if (s.human_fraction && !(*s.human_fraction >= 0.0 && *s.human_fraction <= 1.0)) {
        throw validation_error("human_fraction outside [0,1]");
    }
}

std::string content_id(std::string_view code) { return sha256_hex(code).substr(0, 16); }

}  // namespace codetect
