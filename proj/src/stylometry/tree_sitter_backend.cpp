#include "codetect/stylometry/tree_sitter_backend.hpp"

#include <array>
#include <memory>

#include <tree_sitter/api.h>

extern "C" {
const TSLanguage* tree_sitter_python();
const TSLanguage* tree_sitter_java();
const TSLanguage* tree_sitter_cpp();
const TSLanguage* tree_sitter_c_sharp();
const TSLanguage* tree_sitter_go();
const TSLanguage* tree_sitter_javascript();
const TSLanguage* tree_sitter_php();
const TSLanguage* tree_sitter_ruby();
}

namespace codetect {
namespace {

struct ParserDeleter {
    void operator()(TSParser* p) const { ts_parser_delete(p); }
};
struct TreeDeleter {
    void operator()(TSTree* t) const { ts_tree_delete(t); }
};
struct CursorGuard {
    TSTreeCursor cursor;
    explicit CursorGuard(TSNode root) : cursor(ts_tree_cursor_new(root)) {}
    ~CursorGuard() { ts_tree_cursor_delete(&cursor); }
    CursorGuard(const CursorGuard&) = delete;
    CursorGuard& operator=(const CursorGuard&) = delete;
};

TSParser* thread_parser(Language lang) {
    thread_local std::array<std::unique_ptr<TSParser, ParserDeleter>, 9> parsers;
    auto& slot = parsers[static_cast<std::size_t>(lang)];
    if (!slot) {
        slot.reset(ts_parser_new());
        ts_parser_set_language(slot.get(), tree_sitter_language(lang));
    }
    return slot.get();
}

SyntaxNode make_node(TSNode n, const char* field, std::int32_t parent) {
    SyntaxNode out;
    out.type = ts_node_type(n);
    out.field = field ? std::string_view(field) : std::string_view();
    out.named = ts_node_is_named(n);
    out.error = ts_node_is_error(n) || ts_node_is_missing(n);
    out.start_byte = ts_node_start_byte(n);
    out.end_byte = ts_node_end_byte(n);
    out.start_row = ts_node_start_point(n).row;
    out.end_row = ts_node_end_point(n).row;
    out.parent = parent;
    return out;
}

}  // namespace

const TSLanguage* tree_sitter_language(Language lang) {
    switch (lang) {
        case Language::python: return tree_sitter_python();
        case Language::java: return tree_sitter_java();
        case Language::cpp: return tree_sitter_cpp();
        case Language::csharp: return tree_sitter_c_sharp();
        case Language::go: return tree_sitter_go();
        case Language::javascript: return tree_sitter_javascript();
        case Language::php: return tree_sitter_php();
        case Language::ruby: return tree_sitter_ruby();
        case Language::other: return nullptr;
    }
    return nullptr;
}

bool TreeSitterBackend::supports(Language lang) const { return tree_sitter_language(lang) != nullptr; }

SyntaxTree TreeSitterBackend::parse(std::string_view code, Language lang) const {
    if (!supports(lang)) throw ParseError("unparsable: no grammar for this language");
    TSParser* parser = thread_parser(lang);
    std::unique_ptr<TSTree, TreeDeleter> tree(
        ts_parser_parse_string(parser, nullptr, code.data(), static_cast<std::uint32_t>(code.size())));
    if (!tree) throw ParseError("unparsable: parser produced no tree");
    const TSNode root = ts_tree_root_node(tree.get());
    if (ts_node_is_error(root)) throw ParseError("unparsable: root is an error node");
    // Error recovery always yields a tree; call it a failure when nothing at
    // the top level parsed.
    if (ts_node_has_error(root)) {
        bool any_parsed = false;
        for (std::uint32_t i = 0, n = ts_node_named_child_count(root); i < n && !any_parsed; ++i) {
            const TSNode child = ts_node_named_child(root, i);
            any_parsed = !ts_node_is_error(child) && !ts_node_is_missing(child);
        }
        if (!any_parsed) throw ParseError("unparsable: no top-level construct parsed");
    }

    // Pre-order walk with a cursor; `stack` holds the owned index of each
    // ancestor on the current path.
    SyntaxTree out;
    CursorGuard guard(root);
    TSTreeCursor* cursor = &guard.cursor;
    std::vector<std::int32_t> stack;
    while (true) {
        const TSNode n = ts_tree_cursor_current_node(cursor);
        const char* field = ts_tree_cursor_current_field_name(cursor);
        const std::int32_t parent = stack.empty() ? -1 : stack.back();
        const auto index = static_cast<std::int32_t>(out.add(make_node(n, field, parent)));
        if (ts_tree_cursor_goto_first_child(cursor)) {
            stack.push_back(index);
            continue;
        }
        while (!ts_tree_cursor_goto_next_sibling(cursor)) {
            if (!ts_tree_cursor_goto_parent(cursor)) return out;
            stack.pop_back();
        }
    }
}

const GrammarBackend& default_backend() {
    static const TreeSitterBackend backend;
    return backend;
}

}  // namespace codetect
