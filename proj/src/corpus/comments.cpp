#include "codetect/corpus/comments.hpp"

#include "codetect/common.hpp"

#include <cctype>
#include <vector>

namespace codetect {
namespace {

struct CommentGrammar {
    bool hash_line = false;
    bool slash_comments = false;
    bool python_docstrings = false;
    bool ruby_begin_end = false;
    bool triple_quotes = false;
    bool backtick_raw = false;       // Go raw strings and Ruby command strings
    bool backtick_template = false;  // JavaScript template literals
    bool cpp_raw_strings = false;
    bool digit_separators = false;
    bool csharp_verbatim = false;
    bool regex_literals = false;
    bool php_heredoc = false;
};

CommentGrammar grammar_for(Language lang) {
    CommentGrammar g;
    switch (lang) {
        case Language::python:
            g.hash_line = true;
            g.python_docstrings = true;
            g.triple_quotes = true;
            break;
        case Language::java:
            g.slash_comments = true;
            g.triple_quotes = true;
            break;
        case Language::cpp:
            g.slash_comments = true;
            g.cpp_raw_strings = true;
            g.digit_separators = true;
            break;
        case Language::csharp:
            g.slash_comments = true;
            g.triple_quotes = true;
            g.csharp_verbatim = true;
            break;
        case Language::go:
            g.slash_comments = true;
            g.backtick_raw = true;
            break;
        case Language::javascript:
            g.slash_comments = true;
            g.backtick_template = true;
            g.regex_literals = true;
            break;
        case Language::php:
            g.slash_comments = true;
            g.hash_line = true;
            g.php_heredoc = true;
            break;
        case Language::ruby:
            g.hash_line = true;
            g.ruby_begin_end = true;
            g.backtick_raw = true;
            break;
        case Language::other:
            throw validation_error("no comment grammar for this language");
    }
    return g;
}

bool is_ident_start(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalpha(u) || c == '_' || c == '$' || u >= 0x80;
}

bool is_ident_char(char c) { return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

bool is_hspace(char c) { return c == ' ' || c == '\t'; }

// Joins the pieces of one output line that were separated by removed spans.
std::string close_gaps(const std::string& line, const std::vector<std::size_t>& gaps) {
    std::string result;
    std::size_t prev = 0;
    for (std::size_t k = 0; k <= gaps.size(); ++k) {
        const std::size_t end = k < gaps.size() ? gaps[k] : line.size();
        std::string_view seg(line.data() + prev, end - prev);
        prev = end;
        if (k == 0) {
            result.assign(seg);
            continue;
        }
        while (!seg.empty() && is_hspace(seg.front())) seg.remove_prefix(1);
        if (is_blank(result)) {
            result.append(seg);
            continue;
        }
        while (!result.empty() && is_hspace(result.back())) result.pop_back();
        if (!seg.empty()) {
            result.push_back(' ');
            result.append(seg);
        }
    }
    return result;
}

class Stripper {
public:
    Stripper(std::string_view src, const CommentGrammar& g) : src_(src), g_(g) {}

    std::string run() {
        while (pos_ < src_.size()) step();
        end_line();
        return out_;
    }

private:
    std::string_view src_;
    const CommentGrammar& g_;
    std::size_t pos_ = 0;

    std::string out_;
    bool first_line_ = true;
    std::string line_;
    std::vector<std::size_t> gaps_;
    bool modified_ = false;

    // Python logical-line state.
    int bracket_depth_ = 0;
    bool continued_ = false;
    bool logical_start_ = true;

    // JavaScript template literal nesting: brace depth at each `${`.
    std::vector<int> template_stack_;
    int brace_depth_ = 0;
    char last_significant_ = '\0';
    std::string last_word_;

    char peek(std::size_t off = 0) const { return pos_ + off < src_.size() ? src_[pos_ + off] : '\0'; }
    bool starts_with(std::string_view s) const { return src_.substr(pos_).starts_with(s); }

    void emit(char c) {
        if (c == '\n') {
            end_line();
        } else {
            line_.push_back(c);
        }
    }

    void copy(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) emit(src_[pos_++]);
    }

    // Skips n source characters, leaving a gap in the current output line.
    void drop(std::size_t n) {
        pos_ = std::min(src_.size(), pos_ + n);
        gaps_.push_back(line_.size());
        modified_ = true;
    }

    void end_line() {
        const std::string text = modified_ ? std::string(trim_right(close_gaps(line_, gaps_))) : line_;
        if (!(modified_ && is_blank(text))) {
            if (!first_line_) out_.push_back('\n');
            out_ += text;
            first_line_ = false;
        }
        line_.clear();
        gaps_.clear();
        modified_ = false;
    }

    void mark_significant(char c) {
        last_significant_ = c;
        if (!is_ident_char(c)) last_word_.clear();
        logical_start_ = false;
        continued_ = false;
    }

    void step() {
        const char c = peek();

        if (c == '\n') {
            ++pos_;
            if (g_.python_docstrings && bracket_depth_ == 0 && !continued_) logical_start_ = true;
            continued_ = false;
            end_line();
            return;
        }
        if (is_space(c)) {
            copy(1);
            return;
        }
        if (c == '\\' && peek(1) == '\n') {
            copy(1);
            continued_ = true;
            return;
        }

        if (g_.ruby_begin_end && c == '=' && line_.empty() && starts_with("=begin") &&
            (pos_ + 6 == src_.size() || is_space(src_[pos_ + 6]))) {
            skip_ruby_block();
            return;
        }
        if (g_.hash_line && c == '#' && !(g_.php_heredoc && peek(1) == '[')) {
            skip_line_comment();
            return;
        }
        if (g_.slash_comments && c == '/' && peek(1) == '/') {
            skip_line_comment();
            return;
        }
        if (g_.slash_comments && c == '/' && peek(1) == '*') {
            skip_block_comment();
            return;
        }

        if (g_.backtick_template && !template_stack_.empty() && c == '}' && brace_depth_ == template_stack_.back()) {
            template_stack_.pop_back();
            copy(1);
            scan_template_body();
            return;
        }

        if (g_.csharp_verbatim && (c == '@' || c == '$')) {
            std::size_t k = 0;
            bool verbatim = false;
            while (k < 2 && (peek(k) == '@' || peek(k) == '$')) {
                verbatim |= peek(k) == '@';
                ++k;
            }
            if (peek(k) == '"' && !(peek(k + 1) == '"' && peek(k + 2) == '"')) {
                copy(k);
                if (verbatim) {
                    copy_verbatim();
                } else {
                    copy_until_closing('"', true, false);
                }
                mark_significant('"');
                return;
            }
        }
        if (is_ident_start(c)) {
            scan_identifier();
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            scan_number();
            return;
        }
        if (c == '"' || c == '\'') {
            scan_quoted(0);
            return;
        }
        if (c == '`') {
            if (g_.backtick_template) {
                copy(1);
                scan_template_body();
                mark_significant('`');
                return;
            }
            if (g_.backtick_raw) {
                copy_until_closing('`', /*escapes=*/false, /*multiline=*/true);
                mark_significant('`');
                return;
            }
        }
        if (g_.regex_literals && c == '/' && regex_allowed()) {
            if (scan_regex()) return;
        }
        if (g_.php_heredoc && starts_with("<<<")) {
            if (scan_heredoc()) return;
        }

        if (c == '(' || c == '[' || c == '{') ++bracket_depth_;
        if ((c == ')' || c == ']' || c == '}') && bracket_depth_ > 0) --bracket_depth_;
        if (c == '{') ++brace_depth_;
        if (c == '}') --brace_depth_;
        copy(1);
        mark_significant(c);
    }

    void skip_line_comment() {
        std::size_t n = 0;
        while (pos_ + n < src_.size() && src_[pos_ + n] != '\n') ++n;
        drop(n);
    }

    void skip_block_comment() {
        const auto close = src_.find("*/", pos_ + 2);
        drop(close == std::string_view::npos ? src_.size() - pos_ : close + 2 - pos_);
    }

    void skip_ruby_block() {
        std::size_t p = pos_;
        while (true) {
            const auto nl = src_.find('\n', p);
            if (nl == std::string_view::npos) {
                p = src_.size();
                break;
            }
            p = nl + 1;
            if (src_.substr(p).starts_with("=end")) {
                const auto eol = src_.find('\n', p);
                p = eol == std::string_view::npos ? src_.size() : eol;
                break;
            }
        }
        drop(p - pos_);
    }

    void scan_identifier() {
        std::size_t n = 0;
        while (pos_ + n < src_.size() && is_ident_char(src_[pos_ + n])) ++n;
        const std::string_view word = src_.substr(pos_, n);
        const char next = pos_ + n < src_.size() ? src_[pos_ + n] : '\0';

        if (next == '"' || next == '\'') {
            if (g_.python_docstrings && is_python_prefix(word)) {
                scan_quoted(n);
                return;
            }
            if (g_.cpp_raw_strings && next == '"' &&
                (word == "R" || word == "u8R" || word == "uR" || word == "UR" || word == "LR")) {
                copy(n);
                copy_cpp_raw();
                mark_significant('"');
                return;
            }
        }
        copy(n);
        last_word_.assign(word);
        logical_start_ = false;
        continued_ = false;
        last_significant_ = word.back();
    }

    static bool is_python_prefix(std::string_view w) {
        if (w.empty() || w.size() > 2) return false;
        for (char ch : w) {
            const char l = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            if (l != 'r' && l != 'b' && l != 'u' && l != 'f') return false;
        }
        return true;
    }

    void scan_number() {
        std::size_t n = 0;
        while (pos_ + n < src_.size()) {
            const char ch = src_[pos_ + n];
            if (is_ident_char(ch) || ch == '.') {
                ++n;
            } else if (g_.digit_separators && ch == '\'' && pos_ + n + 1 < src_.size() &&
                       std::isxdigit(static_cast<unsigned char>(src_[pos_ + n + 1]))) {
                ++n;
            } else {
                break;
            }
        }
        copy(n);
        mark_significant('0');
    }

    // A quoted literal starting after `prefix` characters (Python prefixes).
    void scan_quoted(std::size_t prefix) {
        const char q = peek(prefix);
        const bool triple = g_.triple_quotes && peek(prefix + 1) == q && peek(prefix + 2) == q;
        const std::size_t start = pos_;
        const bool docstring_candidate = g_.python_docstrings && logical_start_ && bracket_depth_ == 0;

        std::size_t p = pos_ + prefix;
        p = triple ? end_of_triple(p, q) : end_of_simple(p, q, /*multiline=*/false);

        if (docstring_candidate && rest_of_line_is_empty(p)) {
            pos_ = start;
            drop(p - start);
            return;
        }
        pos_ = start;
        copy(p - start);
        mark_significant(q);
    }

    std::size_t end_of_triple(std::size_t p, char q) const {
        p += 3;
        while (p < src_.size()) {
            if (src_[p] == '\\') {
                p += 2;
                continue;
            }
            if (src_[p] == q && p + 2 < src_.size() && src_[p + 1] == q && src_[p + 2] == q) {
                p += 3;
                // C# raw strings may close with a longer quote run.
                while (g_.csharp_verbatim && p < src_.size() && src_[p] == q) ++p;
                return p;
            }
            ++p;
        }
        return src_.size();
    }

    std::size_t end_of_simple(std::size_t p, char q, bool multiline) const {
        ++p;
        while (p < src_.size()) {
            const char ch = src_[p];
            if (ch == '\\') {
                p += 2;
                continue;
            }
            if (ch == q) return p + 1;
            if (ch == '\n' && !multiline) return p;
            ++p;
        }
        return src_.size();
    }

    bool rest_of_line_is_empty(std::size_t p) const {
        while (p < src_.size() && is_hspace(src_[p])) ++p;
        return p >= src_.size() || src_[p] == '\n' || src_[p] == '#' || src_[p] == '\r';
    }

    void copy_until_closing(char q, bool escapes, bool multiline) {
        std::size_t p = pos_ + 1;
        while (p < src_.size()) {
            const char ch = src_[p];
            if (escapes && ch == '\\') {
                p += 2;
                continue;
            }
            if (ch == q) {
                ++p;
                break;
            }
            if (ch == '\n' && !multiline) break;
            ++p;
        }
        copy(std::min(p, src_.size()) - pos_);
    }

    void copy_verbatim() {
        std::size_t p = pos_ + 1;
        while (p < src_.size()) {
            if (src_[p] == '"') {
                if (p + 1 < src_.size() && src_[p + 1] == '"') {
                    p += 2;
                    continue;
                }
                ++p;
                break;
            }
            ++p;
        }
        copy(p - pos_);
    }

    void copy_cpp_raw() {
        // R"delim( ... )delim"
        const auto open = src_.find('(', pos_ + 1);
        if (open == std::string_view::npos || open - pos_ > 17) {
            copy_until_closing('"', true, false);
            return;
        }
        const std::string close = ")" + std::string(src_.substr(pos_ + 1, open - pos_ - 1)) + "\"";
        const auto end = src_.find(close, open + 1);
        const std::size_t stop = end == std::string_view::npos ? src_.size() : end + close.size();
        copy(stop - pos_);
    }

    void scan_template_body() {
        while (pos_ < src_.size()) {
            const char ch = peek();
            if (ch == '\\') {
                copy(2);
                continue;
            }
            if (ch == '`') {
                copy(1);
                return;
            }
            if (ch == '$' && peek(1) == '{') {
                copy(2);
                template_stack_.push_back(brace_depth_);
                return;
            }
            copy(1);
        }
    }

    bool regex_allowed() const {
        static constexpr std::string_view kKeywords[] = {"return", "typeof", "instanceof", "in",   "of",
                                                         "new",    "delete", "void",       "throw", "case",
                                                         "do",     "else",   "yield",      "await"};
        if (!last_word_.empty()) {
            for (auto kw : kKeywords) {
                if (last_word_ == kw) return true;
            }
            return false;
        }
        if (last_significant_ == '\0') return true;
        return std::string_view("(,=:[!&|?{};+-*%<>~^").find(last_significant_) != std::string_view::npos;
    }

    bool scan_regex() {
        std::size_t p = pos_ + 1;
        bool in_class = false;
        while (p < src_.size()) {
            const char ch = src_[p];
            if (ch == '\n') return false;
            if (ch == '\\') {
                p += 2;
                continue;
            }
            if (ch == '[') in_class = true;
            if (ch == ']') in_class = false;
            if (ch == '/' && !in_class) break;
            ++p;
        }
        if (p >= src_.size()) return false;
        ++p;
        while (p < src_.size() && std::isalpha(static_cast<unsigned char>(src_[p]))) ++p;
        copy(p - pos_);
        mark_significant('/');
        return true;
    }

    bool scan_heredoc() {
        std::size_t p = pos_ + 3;
        while (p < src_.size() && is_hspace(src_[p])) ++p;
        const bool quoted = p < src_.size() && (src_[p] == '\'' || src_[p] == '"');
        if (quoted) ++p;
        const std::size_t id_start = p;
        while (p < src_.size() && is_ident_char(src_[p])) ++p;
        if (p == id_start) return false;
        const std::string id(src_.substr(id_start, p - id_start));
        if (quoted) ++p;
        auto nl = src_.find('\n', p);
        while (nl != std::string_view::npos) {
            std::size_t q = nl + 1;
            while (q < src_.size() && is_hspace(src_[q])) ++q;
            if (src_.substr(q).starts_with(id) &&
                (q + id.size() >= src_.size() || !is_ident_char(src_[q + id.size()]))) {
                copy(q + id.size() - pos_);
                mark_significant(';');
                return true;
            }
            nl = src_.find('\n', nl + 1);
        }
        copy(src_.size() - pos_);
        return true;
    }
};

}  // namespace

std::string strip_comments(std::string_view code, Language language) {
    const CommentGrammar g = grammar_for(language);
    return Stripper(code, g).run();
}

CodeSample strip_comments(const CodeSample& sample) {
    CodeSample out = sample;
    out.code = strip_comments(sample.code, sample.language.value);
    return out;
}

}  // namespace codetect
