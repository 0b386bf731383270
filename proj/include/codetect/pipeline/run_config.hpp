#pragma once

#include "codetect/corpus/qa.hpp"
#include "codetect/corpus/splits.hpp"
#include "codetect/eval/ood.hpp"
#include "codetect/eval/report.hpp"
#include "codetect/explain/importance.hpp"
#include "codetect/models/label_space.hpp"
#include "codetect/models/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace codetect {

struct ZeroShotConfig {
    int order = 4;
    double add_k = 0.01;
    int perturbations = 64;
    // Shell command speaking the adapter protocol; empty uses the n-gram model.
    std::string adapter_command;
};

struct ExplainConfig {
    ImportanceMethod method = ImportanceMethod::gain;
    ImportanceMetric metric = ImportanceMetric::macro_f1;
    int repeats = 5;
};

struct RunConfig {
    std::vector<std::string> corpus_paths;
    QaConfig qa;
    SplitPlan split;
    bool keep_existing_splits = false;  // use the split field of input records when every record has one
    double max_missing = 0.2;
    ModelConfig model;
    Task task = Task::binary;
    std::optional<OodProtocol> ood;  // absent = in-domain
    std::vector<GroupKey> breakdown{GroupKey::language, GroupKey::source, GroupKey::generator};
    std::size_t degradation_bins = 10;
    ZeroShotConfig zeroshot;
    ExplainConfig explain;
    std::string out_dir = "codetect-out";
    std::uint64_t seed = 0;
    int jobs = 0;

    /// Fills seeds from `seed` and checks every value. Throws validation errors.
    void finalize();
    /// Canonical form; excludes out_dir and jobs, which never change results.
    nlohmann::json canonical() const;
    /// SHA-256 of the canonical form.
    std::string digest() const;
};

/// The default configuration as a JSON tree.
nlohmann::json default_config_json();

/// Applies "a.b.c=value" to a config tree. Values parse as JSON when they
/// can, otherwise as strings. Unknown paths are validation errors.
void apply_override(nlohmann::json& tree, std::string_view assignment);

/// Builds a RunConfig from a tree. Relative corpus paths resolve against
/// `base_dir`. Unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& tree, const std::string& base_dir = {});

/// Reads the file (or the defaults when `path` is empty) and applies
/// overrides in order.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace codetect
