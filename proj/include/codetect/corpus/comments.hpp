#pragma once

#include "codetect/corpus/sample.hpp"

#include <string>
#include <string_view>

namespace codetect {

/// Removes line comments, block comments and (Python) docstrings with a
/// string-aware lexical scanner for the given language.
///
/// Lines that become blank through removal are deleted; lines that were
/// blank already are kept. Where a block comment sat between code on the
/// same line the surrounding spaces collapse to one. The result is a fixed
/// point: stripping it again returns it unchanged.
///
/// Throws a validation error "no comment grammar" for Language::other.
std::string strip_comments(std::string_view code, Language language);

CodeSample strip_comments(const CodeSample& sample);

}  // namespace codetect
