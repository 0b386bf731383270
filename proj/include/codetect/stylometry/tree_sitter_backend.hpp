#pragma once

#include "codetect/stylometry/syntax_tree.hpp"

struct TSLanguage;

namespace codetect {

/// tree-sitter grammar for a supported language, nullptr otherwise.
const TSLanguage* tree_sitter_language(Language lang);

class TreeSitterBackend final : public GrammarBackend {
public:
    bool supports(Language lang) const override;
    SyntaxTree parse(std::string_view code, Language lang) const override;
};

}  // namespace codetect
