#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance runner. None of them call the code under test.

#include "codetect/corpus/sample.hpp"
#include "codetect/random.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace codetect::oracle {

/// Random snippet stitched from pieces that stress the comment scanners:
/// markers inside strings, escapes, docstrings, unterminated blocks.
std::string fuzz_snippet(Language lang, Rng& rng);

/// Smallest value v with #{x <= v} >= p% of N, by counting.
std::size_t nearest_rank(std::vector<std::size_t> xs, int p);

struct TreeWalk {
    std::size_t max_depth = 0;
    std::size_t assignments = 0;
    std::map<std::string, std::size_t> counts;  // "<language>/<type>" over named non-root nodes
};

/// Recursive walk of the tree-sitter C API over named children, sharing only
/// the rule table with the summarizer.
TreeWalk walk_tree(const std::string& code, Language lang);

/// Whitespace share over code points.
double whitespace_ratio(const std::string& code);
/// Mean code points per non-blank line.
double avg_line_length(const std::string& code);

/// Mean over classes of 2tp / (2tp + fp + fn), 0 for a class with tp = 0.
double macro_f1(const std::vector<std::size_t>& preds, const std::vector<std::size_t>& golds, std::size_t classes);

/// The 50 files under tests/data/fixtures, sorted.
std::vector<std::filesystem::path> fixture_files(const std::string& data_dir);
Language language_for(const std::filesystem::path& p);

}  // namespace codetect::oracle
