#pragma once

#include "codetect/models/model.hpp"
#include "codetect/parallel.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace codetect {

enum class ImportanceMethod { gain, permutation };
enum class ImportanceMetric { macro_f1, accuracy };

std::string_view to_string(ImportanceMetric m);
ImportanceMetric parse_importance_metric(std::string_view text);

struct ImportanceReport {
    ImportanceMethod method = ImportanceMethod::gain;
    std::vector<double> scores;  // model feature order
    std::vector<std::pair<std::string, double>> ranked;  // descending, ties by name
    // Permutation only.
    ImportanceMetric metric = ImportanceMetric::macro_f1;
    double baseline = 0;
    int repeats = 0;
    std::uint64_t seed = 0;
    double total_gain = 0;  // gain only, before normalization

    std::string to_json() const;
    /// "feature,score" rows in rank order, for plotting.
    std::string to_csv() const;
};

/// Split gain summed per feature over every tree, normalized to sum 1.
/// Throws "use permutation" for linear models.
ImportanceReport gain_importance(const TrainedModel& model);

/// Mean metric drop over `repeats` independent shuffles of each column.
ImportanceReport permutation_importance(const TrainedModel& model, const FeatureMatrix& m,
                                        ImportanceMetric metric = ImportanceMetric::macro_f1, int repeats = 5,
                                        std::uint64_t seed = 0, Exec exec = Exec::parallel);

}  // namespace codetect
