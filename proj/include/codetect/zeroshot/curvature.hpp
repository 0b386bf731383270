#pragma once

#include "codetect/corpus/sample.hpp"
#include "codetect/parallel.hpp"
#include "codetect/zeroshot/backend.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace codetect {

inline constexpr double kMinCurvatureStdev = 1e-8;

/// (loglik - mean) / max(stdev, 1e-8) over perturbation log-likelihoods,
/// with the population standard deviation.
double curvature_statistic(double loglik, std::span<const double> perturbation_logliks);

/// Requires non-empty code and k >= 2.
double curvature_score(std::string_view code, const LikelihoodBackend& backend, std::size_t k = 64,
                       std::uint64_t seed = 0);

/// Scores every sample; each sample's stream is seeded from its content so
/// the result does not depend on order or thread count.
std::vector<double> curvature_scores(std::span<const CodeSample> samples, const LikelihoodBackend& backend,
                                     std::size_t k = 64, std::uint64_t seed = 0, Exec exec = Exec::parallel);

struct ThresholdFit {
    double threshold = 0;
    double macro_f1 = 0;
    // The reversed rule (llm iff score < t) fits the data better.
    bool inverted_polarity = false;
    double inverted_macro_f1 = 0;
};

/// Threshold maximizing binary macro-F1 of "llm iff score >= t". Candidates
/// are the minimum score and the midpoints between consecutive distinct
/// scores; ties go to the smaller threshold. `is_llm[i]` is the gold class.
ThresholdFit fit_threshold(std::span<const double> scores, const std::vector<bool>& is_llm);

inline bool classify_zero_shot_score(double score, double threshold) { return score >= threshold; }

/// Label::llm iff the curvature score reaches the threshold.
Label classify_zero_shot(std::string_view code, const LikelihoodBackend& backend, double threshold,
                         std::size_t k = 64, std::uint64_t seed = 0);

}  // namespace codetect
