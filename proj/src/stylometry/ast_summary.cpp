#include "codetect/stylometry/ast_summary.hpp"

#include "codetect/stylometry/language_rules.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace codetect {
namespace {

bool contains(const std::vector<std::string_view>& list, std::string_view v) {
    return std::find(list.begin(), list.end(), v) != list.end();
}

std::string_view strip_parens(std::string_view s) {
    s = trim(s);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
    return s;
}

// Fields that never name a variable inside a declaration or target.
bool is_non_target_field(std::string_view f) {
    return f == "type" || f == "value" || f == "right" || f == "body" || f == "arguments" || f == "function" ||
           f == "default_value" || f == "dimensions" || f == "parameters" || f == "index" || f == "indices" ||
           f == "subscript" || f == "return_type" || f == "operator";
}

class Summarizer {
public:
    Summarizer(const SyntaxTree& tree, std::string_view code, Language lang)
        : tree_(tree), code_(code), lang_(lang), rules_(rules_for(lang)), prefix_(std::string(to_string(lang)) + "/") {}

    AstSummary run() {
        AstSummary s;
        s.lines_of_code = count_code_lines(code_);
        if (tree_.empty()) return s;

        std::set<std::string_view> operators;
        std::set<std::string_view> operands;
        std::size_t branches = 0;

        // Iterative pre-order walk carrying the named depth and whether the
        // node sits inside a literal already counted as one operand.
        struct Entry {
            std::uint32_t index;
            std::size_t depth;
            bool in_literal;
        };
        std::vector<Entry> stack{{0, 0, false}};
        while (!stack.empty()) {
            const auto [i, depth, in_literal] = stack.back();
            stack.pop_back();
            const SyntaxNode& n = tree_.node(i);

            if (n.named && i != 0) {
                ++s.node_counts[prefix_ + std::string(n.type)];
                s.max_depth = std::max(s.max_depth, depth);
            }
            if (n.named && contains(rules_.functions, n.type)) {
                s.function_spans.emplace_back(n.start_row + 1, n.end_row + 1);
            }
            if (n.named && contains(rules_.decisions, n.type)) {
                s.decision_condition_lengths.push_back(utf8_length(condition_text(i)));
            }
            if (n.named && contains(rules_.branches, n.type)) ++branches;
            if (!n.named && n.children.empty() && contains(rules_.boolean_operators, n.type)) ++branches;
            if (n.named && contains(rules_.assignments, n.type)) ++s.assignment_count;
            if (n.named && contains(rules_.initializers, n.type) && tree_.child_by_field(i, "value") >= 0) {
                ++s.assignment_count;
            }
            for (const auto& [type, field] : rules_.variable_sites) {
                if (n.type != type || !n.named) continue;
                for (std::uint32_t c : n.children) {
                    if (field == "*" || tree_.node(c).field == field) collect_variables(c, s.identifier_lengths);
                }
            }

            // Halstead: literals are single operands; other named leaves are
            // operands; anonymous non-delimiter tokens are operators.
            bool literal_here = in_literal;
            if (!in_literal && n.named && i != 0 && is_atomic_literal(n.type)) {
                ++s.halstead.total_operands;
                operands.insert(tree_.text(i, code_));
                literal_here = true;
            } else if (!in_literal && n.children.empty() && i != 0) {
                const std::string_view text = tree_.text(i, code_);
                if (n.named) {
                    ++s.halstead.total_operands;
                    operands.insert(text);
                } else if (!is_delimiter_token(n.type) && !text.empty()) {
                    ++s.halstead.total_operators;
                    operators.insert(n.type);
                }
            }

            const std::size_t child_depth = n.named ? depth + 1 : depth;
            for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
                stack.push_back({*it, child_depth, literal_here});
            }
        }
        s.halstead.distinct_operators = operators.size();
        s.halstead.distinct_operands = operands.size();
        s.cyclomatic_complexity = 1 + branches;
        return s;
    }

private:
    const SyntaxTree& tree_;
    std::string_view code_;
    Language lang_;
    const LanguageRules& rules_;
    std::string prefix_;

    static bool is_atomic_literal(std::string_view type) {
        return type.find("string") != std::string_view::npos || type.ends_with("_literal") || type == "heredoc" ||
               type == "nowdoc";
    }

    std::string_view condition_text(std::uint32_t i) const {
        const SyntaxNode& n = tree_.node(i);
        if (auto c = tree_.child_by_field(i, "condition"); c >= 0) {
            return strip_parens(tree_.text(static_cast<std::uint32_t>(c), code_));
        }
        if (n.type == "conditional_expression" && lang_ == Language::python) {
            // Python: `a if cond else b`
            const auto named = tree_.named_children(i);
            if (named.size() >= 2) return tree_.text(named[1], code_);
        }
        if (auto c = tree_.child_by_field(i, "subject"); c >= 0) return tree_.text(static_cast<std::uint32_t>(c), code_);
        if (auto c = tree_.child_by_field(i, "value"); c >= 0 && n.type == "case") {
            return tree_.text(static_cast<std::uint32_t>(c), code_);
        }
        // Header between the leading keyword and the body.
        if (n.children.empty()) return {};
        const std::uint32_t begin = tree_.node(n.children.front()).end_byte;
        std::uint32_t end = n.end_byte;
        bool found_body = false;
        for (std::uint32_t c : n.children) {
            const auto& child = tree_.node(c);
            if (child.field == "body" || child.field == "consequence") {
                end = child.start_byte;
                found_body = true;
                break;
            }
        }
        if (!found_body) {
            const auto nl = code_.find('\n', begin);
            if (nl != std::string_view::npos && nl < end) end = static_cast<std::uint32_t>(nl);
        }
        if (end < begin) return {};
        std::string_view header = trim(code_.substr(begin, end - begin));
        if (header.ends_with(':')) header = trim(header.substr(0, header.size() - 1));
        if (header.ends_with('{')) header = trim(header.substr(0, header.size() - 1));
        return strip_parens(header);
    }

    void collect_variables(std::uint32_t i, std::vector<std::size_t>& out) const {
        const SyntaxNode& n = tree_.node(i);
        if (!n.named) return;
        if (contains(rules_.identifiers, n.type)) {
            out.push_back(utf8_length(tree_.text(i, code_)));
            return;
        }
        if (contains(rules_.function_declarators, n.type)) return;
        for (const auto& [type, field] : rules_.member_access) {
            if (n.type != type) continue;
            if (field == "*") {
                const auto named = tree_.named_children(i);
                if (!named.empty()) collect_variables(named.front(), out);
            } else if (auto c = tree_.child_by_field(i, field); c >= 0) {
                collect_variables(static_cast<std::uint32_t>(c), out);
            }
            return;
        }
        for (std::uint32_t c : n.children) {
            if (!is_non_target_field(tree_.node(c).field)) collect_variables(c, out);
        }
    }
};

}  // namespace

double HalsteadCounts::volume() const {
    const auto n = static_cast<double>(total_operators + total_operands);
    const auto eta = static_cast<double>(distinct_operators + distinct_operands);
    if (eta < 1.0) return 0.0;
    return n * std::log2(eta);
}

std::size_t count_code_lines(std::string_view code) {
    std::size_t n = 0;
    std::size_t start = 0;
    while (start <= code.size()) {
        auto end = code.find('\n', start);
        if (end == std::string_view::npos) end = code.size();
        if (!is_blank(code.substr(start, end - start))) ++n;
        start = end + 1;
    }
    return n;
}

AstSummary summarize(const SyntaxTree& tree, std::string_view code, Language lang) {
    return Summarizer(tree, code, lang).run();
}

AstSummary parse(std::string_view code, Language lang, const GrammarBackend& backend) {
    return summarize(backend.parse(code, lang), code, lang);
}

}  // namespace codetect
