#pragma once

#include "codetect/stylometry/features.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace codetect {

/// The retained columns and their fit-set medians. Everything needed to
/// turn a FeatureVector into a matrix row.
struct FeatureSchema {
    std::vector<std::string> names;  // sorted
    std::vector<double> imputation;  // fit-set median per column
    std::vector<std::string> dropped;
    double max_missing = 0.2;

    std::string hash() const;
    std::string to_json(const std::string& config_digest = {}) const;
    static FeatureSchema from_json(const std::string& text);
};

/// Digest of an ordered feature-name list.
std::string schema_hash(std::span<const std::string> names);

class FeatureMatrix {
public:
    FeatureMatrix() = default;
    FeatureMatrix(std::vector<std::string> names, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return names_.size(); }
    const std::vector<std::string>& feature_names() const { return names_; }
    const std::string& schema_hash() const { return hash_; }

    double at(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }
    double& at(std::size_t r, std::size_t c) { return values_[r * cols() + c]; }
    std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols(), cols()}; }
    bool imputed(std::size_t r, std::size_t c) const { return imputed_[r * cols() + c] != 0; }
    void set_imputed(std::size_t r, std::size_t c, bool v) { imputed_[r * cols() + c] = v ? 1 : 0; }

    std::vector<std::string> ids;
    std::vector<std::string> labels;

    /// Rows selected by index, same columns.
    FeatureMatrix select_rows(std::span<const std::size_t> rows) const;
    /// Same rows, with column `c` replaced.
    void set_column(std::size_t c, std::span<const double> values);

private:
    std::vector<std::string> names_;
    std::string hash_;
    std::size_t rows_ = 0;
    std::vector<double> values_;
    std::vector<std::uint8_t> imputed_;
};

/// Keeps features whose missing fraction over `fit` is <= max_missing and
/// records fit-set medians for imputation. Throws "all features sparse".
FeatureSchema fit_schema(std::span<const FeatureVector> fit, double max_missing = 0.2);

/// Projects vectors onto the schema, imputing missing values with medians.
FeatureMatrix apply_schema(const FeatureSchema& schema, std::span<const FeatureVector> vectors,
                           std::span<const std::string> labels);

struct BuiltMatrix {
    FeatureSchema schema;
    FeatureMatrix matrix;  // every input row
};

/// fit_schema over rows with fit_mask set, then apply_schema to all rows.
BuiltMatrix build_matrix(std::span<const FeatureVector> vectors, std::span<const std::string> labels,
                         const std::vector<bool>& fit_mask, double max_missing = 0.2);

std::string matrix_to_csv(const FeatureMatrix& m);
FeatureMatrix matrix_from_csv(const std::string& text);

}  // namespace codetect
