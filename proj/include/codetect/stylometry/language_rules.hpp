#pragma once

#include "codetect/corpus/sample.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace codetect {

// Which grammar node types play which stylometric role in one language.
struct LanguageRules {
    std::vector<std::string_view> functions;
    // Control-flow nodes whose condition text is measured.
    std::vector<std::string_view> decisions;
    // Nodes adding one to cyclomatic complexity (decisions, cases, handlers).
    std::vector<std::string_view> branches;
    // Operator tokens adding one to cyclomatic complexity.
    std::vector<std::string_view> boolean_operators;
    // Each node is one assignment.
    std::vector<std::string_view> assignments;
    // Declarators that count as an assignment when they carry a `value`.
    std::vector<std::string_view> initializers;
    // (node type, field) pairs whose subtree names variables; "*" = every child.
    std::vector<std::pair<std::string_view, std::string_view>> variable_sites;
    std::vector<std::string_view> identifiers;
    // Member accesses: only the trailing member name is a variable.
    std::vector<std::pair<std::string_view, std::string_view>> member_access;
    // Declarators that name functions, never variables.
    std::vector<std::string_view> function_declarators;
};

/// Throws for Language::other.
const LanguageRules& rules_for(Language lang);

/// Anonymous tokens that are pure delimiters (excluded from Halstead operators).
bool is_delimiter_token(std::string_view token);

}  // namespace codetect
