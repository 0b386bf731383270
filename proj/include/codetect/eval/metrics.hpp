#pragma once

#include "codetect/models/label_space.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace codetect {

/// Counts indexed [gold][pred] in label-space order.
class ConfusionMatrix {
public:
    ConfusionMatrix() = default;
    explicit ConfusionMatrix(std::size_t classes) : k_(classes), counts_(classes * classes, 0) {}

    std::size_t classes() const { return k_; }
    std::size_t at(std::size_t gold, std::size_t pred) const { return counts_[gold * k_ + pred]; }
    void add(std::size_t gold, std::size_t pred, std::size_t n = 1) { counts_.at(gold * k_ + pred) += n; }
    std::size_t total() const;
    std::size_t trace() const;
    std::size_t gold_count(std::size_t c) const;
    std::size_t pred_count(std::size_t c) const;

    ConfusionMatrix& operator+=(const ConfusionMatrix& o);
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    std::size_t k_ = 0;
    std::vector<std::size_t> counts_;
};

ConfusionMatrix confusion(std::span<const std::size_t> preds, std::span<const std::size_t> golds, std::size_t classes);

struct ClassMetrics {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    std::size_t support = 0;
    bool zero_division = false;  // some ratio was 0/0 and set to 0
};

struct Metrics {
    double precision = 0;  // macro
    double recall = 0;     // macro
    double f1 = 0;         // mean of per-class F1
    double accuracy = 0;
    std::size_t n = 0;
    // Set when every gold label is one class; precision is then not reported.
    bool single_class_gold = false;
};

std::vector<ClassMetrics> per_class_metrics(const ConfusionMatrix& cm);
Metrics macro_metrics(const ConfusionMatrix& cm);
/// Throws on length mismatch or empty input.
Metrics macro_metrics(std::span<const std::size_t> preds, std::span<const std::size_t> golds, const LabelSpace& space);

}  // namespace codetect
