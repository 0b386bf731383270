#include "codetect/stylometry/syntax_tree.hpp"

namespace codetect {

std::uint32_t SyntaxTree::add(SyntaxNode node) {
    const auto index = static_cast<std::uint32_t>(nodes_.size());
    const std::int32_t parent = node.parent;
    nodes_.push_back(std::move(node));
    if (parent >= 0) nodes_[static_cast<std::size_t>(parent)].children.push_back(index);
    return index;
}

std::int64_t SyntaxTree::child_by_field(std::uint32_t i, std::string_view field) const {
    for (std::uint32_t c : nodes_[i].children) {
        if (nodes_[c].field == field) return c;
    }
    return -1;
}

std::vector<std::uint32_t> SyntaxTree::named_children(std::uint32_t i) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t c : nodes_[i].children) {
        if (nodes_[c].named) out.push_back(c);
    }
    return out;
}

}  // namespace codetect
