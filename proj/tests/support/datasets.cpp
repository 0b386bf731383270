#include "datasets.hpp"

#include "codetect/random.hpp"

#include <cmath>

namespace codetect::data {

FeatureMatrix matrix(const std::vector<std::vector<double>>& rows, const std::vector<std::string>& labels) {
    std::vector<std::string> names;
    for (std::size_t c = 0; c < rows.front().size(); ++c) names.push_back("f" + std::to_string(c));
    FeatureMatrix m(names, rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
        m.ids[r] = "r" + std::to_string(r);
    }
    m.labels = labels;
    return m;
}

FeatureMatrix blobs(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    while (rows.size() < n) {
        const bool pos = rows.size() % 2;
        std::vector<double> x(4);
        double proj = 0;
        for (auto& v : x) {
            v = (pos ? 1.5 : -1.5) + standard_normal(rng);
            proj += v;
        }
        if ((pos ? proj : -proj) / 2.0 < 0.5) continue;
        rows.push_back(x);
        labels.emplace_back(pos ? "llm" : "human");
    }
    return matrix(rows, labels);
}

FeatureMatrix xor_data(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 2 * uniform01(rng) - 1, y = 2 * uniform01(rng) - 1;
        rows.push_back({x, y});
        labels.emplace_back(((x > 0) != (y > 0)) ? "llm" : "human");
    }
    return matrix(rows, labels);
}

FeatureMatrix noisy(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x(5);
        for (auto& v : x) v = standard_normal(rng);
        const double logit = 1.2 * x[0] - 0.8 * x[1] * x[2] + 0.3 * x[3];
        labels.emplace_back(uniform01(rng) < 1.0 / (1.0 + std::exp(-logit)) ? "llm" : "human");
        rows.push_back(x);
    }
    return matrix(rows, labels);
}

double accuracy(const TrainedModel& model, const FeatureMatrix& m) {
    const auto preds = model.predict(m);
    const auto y = encode_labels(m, model.label_space);
    std::size_t hit = 0;
    for (std::size_t i = 0; i < y.size(); ++i) hit += preds[i].label == y[i];
    return static_cast<double>(hit) / static_cast<double>(y.size());
}

}  // namespace codetect::data
