#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace codetect {

struct PerturbationSet {
    // Alternative sequences; empty when the backend only reports scores.
    std::vector<std::string> sequences;
    std::vector<double> logliks;
};

/// A scoring model for the curvature statistic. Implementations must be
/// safe to call concurrently.
class LikelihoodBackend {
public:
    virtual ~LikelihoodBackend() = default;
    /// Sum of token log-probabilities of `code`.
    virtual double log_likelihood(std::string_view code) const = 0;
    /// k alternatives with their log-likelihoods under the same model.
    virtual PerturbationSet sample_perturbations(std::string_view code, std::size_t k, std::uint64_t seed) const = 0;
};

}  // namespace codetect
