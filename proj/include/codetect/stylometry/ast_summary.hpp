#pragma once

#include "codetect/corpus/sample.hpp"
#include "codetect/stylometry/syntax_tree.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace codetect {

struct HalsteadCounts {
    std::size_t total_operators = 0;
    std::size_t distinct_operators = 0;
    std::size_t total_operands = 0;
    std::size_t distinct_operands = 0;

    /// N * log2(eta); 0 for an empty vocabulary.
    double volume() const;
};

struct AstSummary {
    // Named non-root nodes by type, keyed "<language>/<node type>".
    std::map<std::string, std::size_t> node_counts;
    // Depth over named nodes; the root has depth 0.
    std::size_t max_depth = 0;
    // 1-based inclusive line ranges of function definitions.
    std::vector<std::pair<std::size_t, std::size_t>> function_spans;
    // Characters in the condition text of each decision node.
    std::vector<std::size_t> decision_condition_lengths;
    std::size_t assignment_count = 0;
    // Variable identifiers only (assignment targets, declarations, parameters).
    std::vector<std::size_t> identifier_lengths;
    std::size_t lines_of_code = 0;  // non-blank lines
    HalsteadCounts halstead;
    std::size_t cyclomatic_complexity = 1;
};

std::size_t count_code_lines(std::string_view code);

/// Derives the summary from an already parsed tree of `code`.
AstSummary summarize(const SyntaxTree& tree, std::string_view code, Language lang);

/// Parses and summarizes. Throws ParseError ("unparsable ...").
AstSummary parse(std::string_view code, Language lang, const GrammarBackend& backend = default_backend());

}  // namespace codetect
