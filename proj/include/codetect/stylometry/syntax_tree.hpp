#pragma once

#include "codetect/common.hpp"
#include "codetect/corpus/sample.hpp"

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

namespace codetect {

/// One node of a concrete syntax tree. `type` and `field` must point at
/// storage with static duration (grammar symbol tables or literals).
struct SyntaxNode {
    std::string_view type;
    std::string_view field;  // field name in the parent, empty if none
    bool named = true;
    bool error = false;      // ERROR or MISSING node
    std::uint32_t start_byte = 0;
    std::uint32_t end_byte = 0;
    std::uint32_t start_row = 0;
    std::uint32_t end_row = 0;
    std::int32_t parent = -1;
    std::vector<std::uint32_t> children;
};

/// Owned parse tree; node 0 is the root. Children are listed in source order.
class SyntaxTree {
public:
    SyntaxTree() = default;

    std::uint32_t add(SyntaxNode node);  // appends to its parent's child list
    const SyntaxNode& node(std::uint32_t i) const { return nodes_[i]; }
    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    const SyntaxNode& root() const { return nodes_.front(); }

    /// First child with the given field name, or -1.
    std::int64_t child_by_field(std::uint32_t i, std::string_view field) const;
    /// Named children only.
    std::vector<std::uint32_t> named_children(std::uint32_t i) const;

    std::string_view text(std::uint32_t i, std::string_view source) const {
        const auto& n = nodes_[i];
        return source.substr(n.start_byte, n.end_byte - n.start_byte);
    }

private:
    std::vector<SyntaxNode> nodes_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ErrorKind::stage, what) {}
};

/// Parses source text into a typed tree. Implementations must be safe to
/// call concurrently from several threads.
class GrammarBackend {
public:
    virtual ~GrammarBackend() = default;
    virtual bool supports(Language lang) const = 0;
    /// Throws ParseError("unparsable ...") when no usable tree is produced.
    virtual SyntaxTree parse(std::string_view code, Language lang) const = 0;
};

/// The tree-sitter backed grammar collection (all supported languages).
const GrammarBackend& default_backend();

}  // namespace codetect
