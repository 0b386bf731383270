#pragma once

#include "codetect/eval/metrics.hpp"
#include "codetect/models/label_space.hpp"

#include <span>
#include <string>
#include <vector>

namespace codetect {

struct DegradationBin {
    double lower = 0;
    double upper = 0;  // bins are [lower, upper), the last one closed
    std::size_t n = 0;
    Metrics metrics;   // meaningful only when n > 0
};

struct DegradationCurve {
    std::vector<DegradationBin> bins;
    // Spearman correlation between bin midpoint and accuracy over the
    // non-empty bins; NaN when undefined.
    double spearman_rho = 0;
    bool non_increasing = true;

    std::string to_json() const;
};

/// Average ranks for ties; NaN if either input is constant or shorter than 2.
double spearman(std::span<const double> x, std::span<const double> y);

/// `fractions[i]` is the share of human lines preserved in sample i.
DegradationCurve degradation_curve(std::span<const double> fractions, std::span<const std::size_t> preds,
                                   std::span<const std::size_t> golds, const LabelSpace& space,
                                   std::size_t bins = 10);

}  // namespace codetect
