#pragma once

// Small labeled matrices with known structure for model tests.

#include "codetect/models/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace codetect::data {

FeatureMatrix matrix(const std::vector<std::vector<double>>& rows, const std::vector<std::string>& labels);

/// Two Gaussian clouds in 4-d, keeping only points at least 0.5 from the
/// separating plane.
FeatureMatrix blobs(std::size_t n, std::uint64_t seed);

/// Uniform points in [-1, 1]^2 labeled llm when the coordinates differ in sign.
FeatureMatrix xor_data(std::size_t n, std::uint64_t seed);

/// Labels drawn from a logistic link with an interaction term, so the loss
/// keeps moving for many trees.
FeatureMatrix noisy(std::size_t n, std::uint64_t seed);

double accuracy(const TrainedModel& model, const FeatureMatrix& m);

}  // namespace codetect::data
