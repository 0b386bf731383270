#include "oracles.hpp"

#include "codetect/stylometry/language_rules.hpp"
#include "codetect/stylometry/tree_sitter_backend.hpp"

#include <tree_sitter/api.h>

#include <algorithm>

namespace codetect::oracle {

std::string fuzz_snippet(Language lang, Rng& rng) {
    static const std::vector<std::string> py = {
        "x = 1", "# note", "  ", "\n", "\n", "s = \"a # b\"", "t = 'it\\'s'", "\"\"\"doc\n more\"\"\"",
        "u = f\"{x}#\"", "def f(a):", "    return a", "'''x'''", "r'\\d#'", "y = x  # trailing", "\t", "pass",
        "z = \"\"", "b'\\x00#'", "if x: y = 2", "#", "\"\"\"", "w = \"\"\"multi\n# not comment\n\"\"\""};
    static const std::vector<std::string> c_like = {
        "int a;", "// note", "/* block */", "/* multi\n line */", "\n", "\n", "  ", "s = \"a // b\";",
        "c = '/';", "q = '\\'';", "e = \"esc \\\" /* no */\";", "x = a / b;", "x = a /* mid */ + b;", "{", "}",
        "//", "/**/", "/* a */ /* b */", "y = 1; // tail", "\t", "f(x);", "/* unterminated?"};
    const auto& pieces = lang == Language::python ? py : c_like;
    std::string out;
    const auto n = 5 + uniform_index(rng, 25);
    for (std::size_t i = 0; i < n; ++i) {
        out += pieces[uniform_index(rng, pieces.size())];
        if (uniform_index(rng, 3) == 0) out += ' ';
        if (uniform_index(rng, 3) == 0) out += '\n';
    }
    return out;
}

std::size_t nearest_rank(std::vector<std::size_t> xs, int p) {
    std::sort(xs.begin(), xs.end());
    for (auto v : xs) {
        const auto at_most = static_cast<std::size_t>(std::count_if(xs.begin(), xs.end(), [&](auto x) { return x <= v; }));
        if (at_most * 100 >= static_cast<std::size_t>(p) * xs.size()) return v;
    }
    return xs.back();
}

namespace {

struct Walker {
    const LanguageRules& rules;
    std::string prefix;
    TreeWalk out;

    static bool listed(const std::vector<std::string_view>& list, const char* type) {
        return std::find(list.begin(), list.end(), std::string_view(type)) != list.end();
    }

    void visit(TSNode n, std::size_t depth, bool is_root) {
        const char* type = ts_node_type(n);
        if (!is_root) {
            ++out.counts[prefix + type];
            out.max_depth = std::max(out.max_depth, depth);
        }
        if (listed(rules.assignments, type)) ++out.assignments;
        if (listed(rules.initializers, type) && !ts_node_is_null(ts_node_child_by_field_name(n, "value", 5))) {
            ++out.assignments;
        }
        for (uint32_t i = 0; i < ts_node_named_child_count(n); ++i) visit(ts_node_named_child(n, i), depth + 1, false);
    }
};

}  // namespace

TreeWalk walk_tree(const std::string& code, Language lang) {
    TSParser* parser = ts_parser_new();
    ts_parser_set_language(parser, tree_sitter_language(lang));
    TSTree* tree = ts_parser_parse_string(parser, nullptr, code.data(), static_cast<uint32_t>(code.size()));
    Walker w{rules_for(lang), std::string(to_string(lang)) + "/", {}};
    w.visit(ts_tree_root_node(tree), 0, true);
    ts_tree_delete(tree);
    ts_parser_delete(parser);
    return w.out;
}

double whitespace_ratio(const std::string& code) {
    std::size_t total = 0, ws = 0;
    for (char ch : code) {
        const auto c = static_cast<unsigned char>(ch);
        if (c >= 0x80 && c < 0xC0) continue;
        ++total;
        ws += c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    }
    return static_cast<double>(ws) / static_cast<double>(total);
}

double avg_line_length(const std::string& code) {
    std::size_t lines = 0, chars = 0;
    std::string line;
    auto flush = [&] {
        if (line.find_first_not_of(" \t\r\v\f") != std::string::npos) {
            ++lines;
            for (char ch : line) chars += (static_cast<unsigned char>(ch) & 0xC0) != 0x80;
        }
        line.clear();
    };
    for (char c : code) {
        if (c == '\n') {
            flush();
        } else {
            line += c;
        }
    }
    flush();
    return static_cast<double>(chars) / static_cast<double>(lines);
}

double macro_f1(const std::vector<std::size_t>& preds, const std::vector<std::size_t>& golds, std::size_t classes) {
    double sum = 0;
    for (std::size_t c = 0; c < classes; ++c) {
        long tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < preds.size(); ++i) {
            tp += preds[i] == c && golds[i] == c;
            fp += preds[i] == c && golds[i] != c;
            fn += preds[i] != c && golds[i] == c;
        }
        sum += tp == 0 ? 0.0 : static_cast<double>(2 * tp) / static_cast<double>(2 * tp + fp + fn);
    }
    return sum / static_cast<double>(classes);
}

std::vector<std::filesystem::path> fixture_files(const std::string& data_dir) {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(data_dir + "/fixtures")) out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

Language language_for(const std::filesystem::path& p) {
    const auto ext = p.extension().string();
    if (ext == ".py") return Language::python;
    if (ext == ".java") return Language::java;
    return Language::cpp;
}

}  // namespace codetect::oracle
