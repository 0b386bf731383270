#pragma once

#include "codetect/corpus/sample.hpp"
#include "codetect/parallel.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace codetect {

struct QaConfig {
    int low_percentile = 5;
    int high_percentile = 95;
    bool per_language = true;
    bool dedup = true;

    void validate() const;
};

/// Whitespace-separated words, with every punctuation or operator character
/// split off as its own token. Runs of [A-Za-z0-9_] and non-ASCII bytes form
/// one token.
std::size_t count_tokens(std::string_view code);

/// Nearest-rank percentile: the ceil(p/100 * N)-th smallest value (rank
/// clamped to [1, N]). `values` need not be sorted. Throws on empty input.
std::size_t nearest_rank(std::span<const std::size_t> values, int percentile);

struct LengthCut {
    std::size_t low = 0;
    std::size_t high = 0;
};

struct LengthFilterResult {
    std::vector<CodeSample> kept;
    std::map<std::string, LengthCut> cuts;  // group name ("*" when pooled)
    std::size_t removed = 0;
};

/// Drops samples whose token count is strictly outside [p_low, p_high] of
/// their language group. Order is preserved.
LengthFilterResult filter_by_length(std::span<const CodeSample> samples, const QaConfig& cfg,
                                    Exec exec = Exec::parallel);

/// Dedup key: comment-stripped code, trailing whitespace removed per line,
/// blank-line runs collapsed to one, leading/trailing blank lines removed.
std::string dedup_key(const CodeSample& sample);

/// Keeps the first sample of every group with identical dedup keys.
std::vector<CodeSample> deduplicate(std::span<const CodeSample> samples, Exec exec = Exec::parallel);

struct QaReport {
    std::size_t ingested = 0;
    std::size_t comment_stripped = 0;   // samples whose code changed when stripped
    std::size_t dropped_unparsable = 0; // unsupported language or empty after stripping
    std::size_t length_filtered = 0;    // removed by the percentile filter
    std::size_t deduplicated = 0;       // removed as duplicates
    std::size_t retained = 0;
    std::map<std::string, LengthCut> cuts;
    std::vector<std::string> small_strata;  // filled by split assignment

    std::string to_json(const std::string& config_digest = {}) const;
};

struct QaResult {
    std::vector<CodeSample> samples;
    QaReport report;
};

/// strip comments -> drop empty/unsupported -> length filter -> dedup.
QaResult run_qa(std::span<const CodeSample> samples, const QaConfig& cfg, Exec exec = Exec::parallel);

}  // namespace codetect
