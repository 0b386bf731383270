#pragma once

#include "codetect/corpus/sample.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace codetect {

struct SplitPlan {
    std::array<double, 3> ratios{0.8, 0.1, 0.1};  // train, val, test
    std::vector<std::string> stratify_keys{"label", "language", "source"};
    std::uint64_t seed = 0;

    void validate() const;
};

/// Per-stratum counts by the largest-remainder method; ties go to the
/// earlier split (train, val, test).
std::array<std::size_t, 3> split_counts(std::size_t n, const std::array<double, 3>& ratios);

/// Stratum key for a sample, e.g. "label=llm|language=java|source=github".
std::string stratum_key(const CodeSample& s, const std::vector<std::string>& keys);

struct SplitResult {
    std::vector<CodeSample> samples;        // input order, split assigned
    std::vector<std::string> small_strata;  // strata of size < 3, sent to train
};

/// Deterministic under plan.seed. Strata smaller than 3 go to train whole.
SplitResult assign_splits(std::vector<CodeSample> samples, const SplitPlan& plan);

}  // namespace codetect
