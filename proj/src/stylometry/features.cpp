#include "codetect/stylometry/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace codetect {

std::optional<double> FeatureVector::get(const std::string& name) const {
    if (auto it = values.find(name); it != values.end()) return it->second;
    if (ast_available && name.starts_with(feature::node_density_prefix)) return 0.0;
    return std::nullopt;
}

double maintainability_index(double halstead_volume, std::size_t cyclomatic_complexity, std::size_t lines_of_code) {
    const double v = halstead_volume > 0.0 ? halstead_volume : 1.0;
    const double loc = static_cast<double>(std::max<std::size_t>(lines_of_code, 1));
    const double mi = 171.0 - 5.2 * std::log(v) - 0.23 * static_cast<double>(cyclomatic_complexity) -
                      16.2 * std::log(loc);
    return std::clamp(mi, 0.0, 171.0);
}

double maintainability_index(const AstSummary& ast) {
    return maintainability_index(ast.halstead.volume(), ast.cyclomatic_complexity, ast.lines_of_code);
}

double whitespace_ratio(std::string_view code) {
    std::size_t total = 0;
    std::size_t ws = 0;
    for (unsigned char c : code) {
        if ((c & 0xC0) == 0x80) continue;
        ++total;
        if (is_space(static_cast<char>(c))) ++ws;
    }
    return total == 0 ? 0.0 : static_cast<double>(ws) / static_cast<double>(total);
}

std::optional<double> avg_line_length(std::string_view code) {
    std::size_t lines = 0;
    std::size_t chars = 0;
    std::size_t start = 0;
    while (start <= code.size()) {
        auto end = code.find('\n', start);
        if (end == std::string_view::npos) end = code.size();
        const std::string_view line = code.substr(start, end - start);
        if (!is_blank(line)) {
            ++lines;
            chars += utf8_length(line);
        }
        start = end + 1;
    }
    if (lines == 0) return std::nullopt;
    return static_cast<double>(chars) / static_cast<double>(lines);
}

namespace {

template <typename T>
std::optional<double> mean_of(const std::vector<T>& xs) {
    if (xs.empty()) return std::nullopt;
    double sum = 0.0;
    for (const auto& x : xs) sum += static_cast<double>(x);
    return sum / static_cast<double>(xs.size());
}

}  // namespace

FeatureVector extract_features(const CodeSample& sample, const GrammarBackend& backend) {
    FeatureVector fv;
    fv.sample_id = sample.id;
    auto set = [&](std::string_view name, std::optional<double> v) { fv.values[std::string(name)] = v; };

    set(feature::avg_line_length, avg_line_length(sample.code));
    set(feature::whitespace_ratio, sample.code.empty() ? std::nullopt : std::optional(whitespace_ratio(sample.code)));

    std::optional<AstSummary> ast;
    if (backend.supports(sample.language.value)) {
        try {
            ast = parse(sample.code, sample.language.value, backend);
        } catch (const ParseError&) {
            ast.reset();
        }
    }
    if (!ast || ast->lines_of_code == 0) {
        for (auto name : {feature::max_decision_length, feature::function_density, feature::avg_function_length,
                          feature::avg_var_name_length, feature::maintainability_index, feature::ast_depth,
                          feature::assignment_count}) {
            set(name, std::nullopt);
        }
        return fv;
    }

    fv.ast_available = true;
    const auto loc = static_cast<double>(ast->lines_of_code);
    const auto& conds = ast->decision_condition_lengths;
    set(feature::max_decision_length,
        conds.empty() ? std::nullopt : std::optional(static_cast<double>(*std::max_element(conds.begin(), conds.end()))));
    set(feature::function_density, static_cast<double>(ast->function_spans.size()) / loc);
    std::vector<std::size_t> spans;
    for (const auto& [first, last] : ast->function_spans) spans.push_back(last - first + 1);
    set(feature::avg_function_length, mean_of(spans));
    set(feature::avg_var_name_length, mean_of(ast->identifier_lengths));
    set(feature::maintainability_index, maintainability_index(*ast));
    set(feature::ast_depth, static_cast<double>(ast->max_depth));
    set(feature::assignment_count, static_cast<double>(ast->assignment_count));
    for (const auto& [type, count] : ast->node_counts) {
        set(std::string(feature::node_density_prefix) + type, static_cast<double>(count) / loc);
    }
    return fv;
}

std::vector<FeatureVector> extract_all(std::span<const CodeSample> samples, Exec exec, const GrammarBackend& backend) {
    std::vector<FeatureVector> out(samples.size());
    const auto n = static_cast<std::ptrdiff_t>(samples.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = extract_features(samples[i], backend);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = extract_features(samples[i], backend);
    }
    return out;
}

}  // namespace codetect
