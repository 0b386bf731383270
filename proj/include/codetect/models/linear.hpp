#pragma once

#include "codetect/parallel.hpp"
#include "codetect/stylometry/matrix.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace codetect {

struct LinearConfig {
    double l2 = 1e-4;
    int epochs = 20;
    double learning_rate = 0.01;  // decays as lr / (1 + t / n)
    std::optional<int> rff_dims;
    std::uint64_t seed = 0;

    void validate() const;
    nlohmann::ordered_json to_json() const;
    static LinearConfig from_json(const nlohmann::json& j);
};

/// Zero-mean, unit-variance scaling fitted on a training matrix. Constant
/// columns are dropped and named in `dropped`.
struct Standardizer {
    std::vector<std::size_t> kept;
    std::vector<double> mean;
    std::vector<double> stdev;
    std::vector<std::string> dropped;

    static Standardizer fit(const FeatureMatrix& m);
    void apply(std::span<const double> row, std::vector<double>& out) const;
};

/// z(x) = sqrt(2/D) cos(Wx + b), W ~ N(0, 2 gamma), b ~ U[0, 2pi). The
/// weights are regenerated from the seed rather than stored.
class RandomFourierFeatures {
public:
    RandomFourierFeatures(std::size_t input_dims, std::size_t dims, double gamma, std::uint64_t seed);

    std::size_t input_dims() const { return input_dims_; }
    std::size_t dims() const { return dims_; }
    double gamma() const { return gamma_; }
    std::uint64_t seed() const { return seed_; }
    void apply(std::span<const double> x, std::vector<double>& out) const;

private:
    std::size_t input_dims_, dims_;
    double gamma_;
    std::uint64_t seed_;
    std::vector<double> w_, b_;
};

struct LinearModel {
    Standardizer scaler;
    std::optional<RandomFourierFeatures> rff;
    // One hinge classifier for two classes (positive = class 1), else one per class.
    std::vector<std::vector<double>> weights;
    std::vector<double> bias;
    // Without usable features the model predicts the training class frequencies.
    bool prior_only = false;
    std::vector<double> prior;
    std::size_t n_classes = 2;

    std::vector<double> scores(std::span<const double> row) const;
    nlohmann::ordered_json to_json() const;
    static LinearModel from_json(const nlohmann::json& j);
};

LinearModel fit_linear(const FeatureMatrix& m, std::span<const std::size_t> y, std::size_t n_classes,
                       const LinearConfig& cfg, Exec exec = Exec::parallel);

}  // namespace codetect
