#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace codetect {

enum class Language { python, java, cpp, csharp, go, javascript, php, ruby, other };
enum class Source { leetcode, codeforces, github, mbpp, thevault, other };
enum class Label { human, llm, hybrid };
enum class Generator { gpt4o, codellama, llama31, codeqwen15, nxcode, other };
enum class Split { train, val, test };

/// An enum value that may carry a free-form tag when it is `other`.
template <typename E>
struct Tagged {
    E value{E::other};
    std::string tag;

    Tagged() = default;
    Tagged(E v, std::string t = {}) : value(v), tag(std::move(t)) {}  // NOLINT: implicit by design

    friend bool operator==(const Tagged&, const Tagged&) = default;
    friend auto operator<=>(const Tagged&, const Tagged&) = default;
};

using LanguageTag = Tagged<Language>;
using SourceTag = Tagged<Source>;
using GeneratorTag = Tagged<Generator>;

std::string_view to_string(Language v);
std::string_view to_string(Source v);
std::string_view to_string(Label v);
std::string_view to_string(Generator v);
std::string_view to_string(Split v);

/// Canonical name, or the tag for `other`.
std::string name_of(const LanguageTag& v);
std::string name_of(const SourceTag& v);
std::string name_of(const GeneratorTag& v);

// Lenient parsers: case-insensitive, common aliases ("c++", "gpt-4o").
// Unknown values map to other(tag).
LanguageTag parse_language(std::string_view text);
SourceTag parse_source(std::string_view text);
GeneratorTag parse_generator(std::string_view text);
// Strict: throw validation errors for unknown values.
Label parse_label(std::string_view text);
Split parse_split(std::string_view text);

/// The languages with a comment grammar and a parser grammar.
const std::vector<Language>& supported_languages();
bool is_supported(const LanguageTag& lang);

struct CodeSample {
    std::string id;
    std::string code;
    LanguageTag language;
    SourceTag source;
    Label label{Label::human};
    std::optional<GeneratorTag> generator;
    std::optional<Split> split;
    // Hybrid samples only: fraction of lines preserved from the human original.
    std::optional<double> human_fraction;

    friend bool operator==(const CodeSample&, const CodeSample&) = default;
};

/// Throws if the label/generator invariants do not hold.
void check_invariants(const CodeSample& s);

/// Deterministic id derived from the code body.
std::string content_id(std::string_view code);

}  // namespace codetect
