#pragma once

#include "codetect/parallel.hpp"
#include "codetect/stylometry/matrix.hpp"

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

namespace codetect {

struct GbdtConfig {
    int trees = 2000;
    double learning_rate = 0.1;
    int max_depth = 6;
    int min_samples_leaf = 20;
    double subsample = 1.0;
    double l2 = 1.0;  // leaf-value regularizer
    int max_bins = 255;
    std::uint64_t seed = 0;

    void validate() const;
    nlohmann::ordered_json to_json() const;
    static GbdtConfig from_json(const nlohmann::json& j);
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0;  // x <= threshold goes left
    bool default_left = true;  // where missing (NaN) values go
    int left = -1;
    int right = -1;
    double value = 0;  // leaf output, learning rate included
    double gain = 0;
    std::size_t count = 0;  // training rows reaching the node

    bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    double predict(std::span<const double> row) const;
};

/// Logistic booster for one binary target.
struct Booster {
    double base_score = 0;
    std::vector<RegressionTree> trees;
    // Mean training log-loss before any tree and after each tree.
    std::vector<double> training_loss;

    double margin(std::span<const double> row) const;
};

struct GbdtModel {
    // One booster for two classes (positive = class 1), else one per class.
    std::vector<Booster> boosters;
    std::size_t n_classes = 2;

    /// Sigmoid of the margin for two classes, softmax of the per-class
    /// margins otherwise.
    std::vector<double> scores(std::span<const double> row) const;
    /// Summed split gain per feature index.
    std::vector<double> split_gain(std::size_t n_features) const;

    nlohmann::ordered_json to_json() const;
    static GbdtModel from_json(const nlohmann::json& j);
};

GbdtModel fit_gbdt(const FeatureMatrix& m, std::span<const std::size_t> y, std::size_t n_classes,
                   const GbdtConfig& cfg, Exec exec = Exec::parallel);

}  // namespace codetect
