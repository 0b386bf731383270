#pragma once

#include "codetect/corpus/sample.hpp"

#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace codetect {

/// Values withheld from training. Test rows match every non-empty axis;
/// on the generator axis that excludes human samples.
struct OodProtocol {
    std::set<std::string> generators;
    std::set<std::string> sources;
    std::set<std::string> languages;

    bool empty() const { return generators.empty() && sources.empty() && languages.empty(); }
    nlohmann::ordered_json to_json() const;
    static OodProtocol from_json(const nlohmann::json& j);
};

struct OodPartition {
    std::vector<std::size_t> train;  // train-split rows with no held-out value
    std::vector<std::size_t> test;   // rows (any split) carrying the held-out values
};

/// Throws a validation error for held-out values absent from the corpus.
OodPartition partition_ood(std::span<const CodeSample> samples, const OodProtocol& protocol);

/// Throws a stage error if any held-out axis shares a value between train
/// and test.
void check_ood_disjoint(std::span<const CodeSample> samples, const OodPartition& part, const OodProtocol& protocol);

}  // namespace codetect
