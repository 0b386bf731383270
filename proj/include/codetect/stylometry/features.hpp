#pragma once

#include "codetect/corpus/sample.hpp"
#include "codetect/parallel.hpp"
#include "codetect/stylometry/ast_summary.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace codetect {

namespace feature {
inline constexpr std::string_view avg_line_length = "avg_line_length";
inline constexpr std::string_view max_decision_length = "max_decision_length";
inline constexpr std::string_view function_density = "function_density";
inline constexpr std::string_view avg_function_length = "avg_function_length";
inline constexpr std::string_view whitespace_ratio = "whitespace_ratio";
inline constexpr std::string_view avg_var_name_length = "avg_var_name_length";
inline constexpr std::string_view maintainability_index = "maintainability_index";
inline constexpr std::string_view ast_depth = "ast_depth";
inline constexpr std::string_view assignment_count = "assignment_count";
inline constexpr std::string_view node_density_prefix = "node_density/";
}  // namespace feature

/// Feature values for one sample. A value of nullopt is missing. Node
/// density features are listed only for node types that occur; for a sample
/// with a parse tree an unlisted density is zero, not missing.
struct FeatureVector {
    std::string sample_id;
    bool ast_available = false;
    std::map<std::string, std::optional<double>> values;

    /// Value as the matrix builder sees it (zero-filling densities).
    std::optional<double> get(const std::string& name) const;
};

/// 171 - 5.2 ln(V) - 0.23 CC - 16.2 ln(LOC), clamped to [0, 171]; V = 0 is
/// treated as 1. Requires lines_of_code >= 1.
double maintainability_index(double halstead_volume, std::size_t cyclomatic_complexity, std::size_t lines_of_code);
double maintainability_index(const AstSummary& ast);

double whitespace_ratio(std::string_view code);
std::optional<double> avg_line_length(std::string_view code);

/// Stylometric features of a QA'd sample. Code the backend cannot parse
/// yields only the text features (average line length, whitespace ratio).
FeatureVector extract_features(const CodeSample& sample, const GrammarBackend& backend = default_backend());

std::vector<FeatureVector> extract_all(std::span<const CodeSample> samples, Exec exec = Exec::parallel,
                                       const GrammarBackend& backend = default_backend());

}  // namespace codetect
