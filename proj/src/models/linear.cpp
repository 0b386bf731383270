#include "codetect/models/linear.hpp"

#include "codetect/common.hpp"
#include "codetect/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace codetect {

void LinearConfig::validate() const {
    if (!(l2 > 0)) throw validation_error("linear.l2 must be positive");
    if (epochs < 1) throw validation_error("linear.epochs must be at least 1");
    if (!(learning_rate > 0)) throw validation_error("linear.learning_rate must be positive");
    if (rff_dims && *rff_dims < 1) throw validation_error("linear.rff_dims must be at least 1");
}

nlohmann::ordered_json LinearConfig::to_json() const {
    nlohmann::ordered_json j;
    j["l2"] = l2;
    j["epochs"] = epochs;
    j["learning_rate"] = learning_rate;
    j["loss"] = "hinge";
    j["rff_dims"] = rff_dims ? nlohmann::ordered_json(*rff_dims) : nlohmann::ordered_json(nullptr);
    j["seed"] = seed;
    return j;
}

LinearConfig LinearConfig::from_json(const nlohmann::json& j) {
    LinearConfig c;
    c.l2 = j.value("l2", c.l2);
    c.epochs = j.value("epochs", c.epochs);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    if (j.contains("loss") && j["loss"] != "hinge") throw validation_error("linear.loss must be hinge");
    if (j.contains("rff_dims") && !j["rff_dims"].is_null()) c.rff_dims = j["rff_dims"].get<int>();
    c.seed = j.value("seed", c.seed);
    return c;
}

Standardizer Standardizer::fit(const FeatureMatrix& m) {
    Standardizer s;
    const auto n = static_cast<double>(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        double mean = 0;
        for (std::size_t r = 0; r < m.rows(); ++r) mean += m.at(r, c);
        mean /= n;
        double var = 0;
        for (std::size_t r = 0; r < m.rows(); ++r) var += (m.at(r, c) - mean) * (m.at(r, c) - mean);
        const double sd = std::sqrt(var / n);
        if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) {
            s.dropped.push_back(m.feature_names()[c]);
            continue;
        }
        s.kept.push_back(c);
        s.mean.push_back(mean);
        s.stdev.push_back(sd);
    }
    return s;
}

void Standardizer::apply(std::span<const double> row, std::vector<double>& out) const {
    out.resize(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) out[k] = (row[kept[k]] - mean[k]) / stdev[k];
}

RandomFourierFeatures::RandomFourierFeatures(std::size_t input_dims, std::size_t dims, double gamma,
                                             std::uint64_t seed)
    : input_dims_(input_dims), dims_(dims), gamma_(gamma), seed_(seed) {
    Rng rng(seed);
    const double sd = std::sqrt(2.0 * gamma);
    w_.resize(dims * input_dims);
    for (auto& w : w_) w = sd * standard_normal(rng);
    b_.resize(dims);
    for (auto& b : b_) b = 2.0 * M_PI * uniform01(rng);
}

void RandomFourierFeatures::apply(std::span<const double> x, std::vector<double>& out) const {
    out.assign(dims_, 0.0);
    const double scale = std::sqrt(2.0 / static_cast<double>(dims_));
    for (std::size_t d = 0; d < dims_; ++d) {
        double dot = b_[d];
        const double* w = w_.data() + d * input_dims_;
        for (std::size_t i = 0; i < input_dims_; ++i) dot += w[i] * x[i];
        out[d] = scale * std::cos(dot);
    }
}

namespace {

double sigmoid(double m) { return m >= 0 ? 1.0 / (1.0 + std::exp(-m)) : std::exp(m) / (1.0 + std::exp(m)); }

std::vector<double> softmax(std::span<const double> m) {
    const double top = *std::max_element(m.begin(), m.end());
    std::vector<double> out(m.size());
    double sum = 0;
    for (std::size_t k = 0; k < m.size(); ++k) sum += out[k] = std::exp(m[k] - top);
    for (auto& v : out) v /= sum;
    return out;
}

void transform(const LinearModel& model, std::span<const double> row, std::vector<double>& scaled,
               std::vector<double>& out) {
    model.scaler.apply(row, scaled);
    if (model.rff) {
        model.rff->apply(scaled, out);
    } else {
        out.swap(scaled);
    }
}

// Primal subgradient descent on the L2-regularized hinge loss.
void train_hinge(const std::vector<std::vector<double>>& x, std::span<const double> y, const LinearConfig& cfg,
                 std::uint64_t seed, std::vector<double>& w, double& b) {
    const std::size_t n = x.size();
    const std::size_t d = x.empty() ? 0 : x[0].size();
    w.assign(d, 0.0);
    b = 0.0;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    std::size_t t = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        shuffle(std::span<std::size_t>(order), rng);
        for (std::size_t i : order) {
            const double lr = cfg.learning_rate / (1.0 + static_cast<double>(t) / static_cast<double>(n));
            ++t;
            double margin = b;
            for (std::size_t k = 0; k < d; ++k) margin += w[k] * x[i][k];
            margin *= y[i];
            const double shrink = 1.0 - lr * cfg.l2;
            for (auto& wk : w) wk *= shrink;
            if (margin < 1.0) {
                for (std::size_t k = 0; k < d; ++k) w[k] += lr * y[i] * x[i][k];
                b += lr * y[i];
            }
        }
    }
}

}  // namespace

std::vector<double> LinearModel::scores(std::span<const double> row) const {
    if (prior_only) return prior;
    std::vector<double> scaled, z;
    transform(*this, row, scaled, z);
    std::vector<double> margins(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
        double m = bias[k];
        for (std::size_t i = 0; i < z.size(); ++i) m += weights[k][i] * z[i];
        margins[k] = m;
    }
    if (n_classes == 2) {
        const double p = sigmoid(margins[0]);
        return {1.0 - p, p};
    }
    return softmax(margins);
}

LinearModel fit_linear(const FeatureMatrix& m, std::span<const std::size_t> y, std::size_t n_classes,
                       const LinearConfig& cfg, Exec exec) {
    cfg.validate();
    LinearModel model;
    model.n_classes = n_classes;
    model.scaler = Standardizer::fit(m);
    model.prior.assign(n_classes, 0.0);
    for (auto label : y) model.prior[label] += 1.0;
    for (auto& p : model.prior) p /= static_cast<double>(y.size());
    if (model.scaler.kept.empty()) {
        model.prior_only = true;
        return model;
    }
    if (cfg.rff_dims) {
        model.rff.emplace(model.scaler.kept.size(), static_cast<std::size_t>(*cfg.rff_dims),
                          1.0 / static_cast<double>(model.scaler.kept.size()), mix_seed(cfg.seed, 0xff));
    }

    std::vector<std::vector<double>> x(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<double> scaled;
        transform(model, m.row(r), scaled, x[r]);
    }

    const std::size_t classifiers = n_classes == 2 ? 1 : n_classes;
    model.weights.resize(classifiers);
    model.bias.resize(classifiers);
    const auto n = static_cast<std::ptrdiff_t>(classifiers);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const std::size_t positive = classifiers == 1 ? 1 : static_cast<std::size_t>(k);
        std::vector<double> target(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) target[i] = y[i] == positive ? 1.0 : -1.0;
        train_hinge(x, target, cfg, mix_seed(cfg.seed, static_cast<std::uint64_t>(k)), model.weights[k],
                    model.bias[k]);
    }
    return model;
}

nlohmann::ordered_json LinearModel::to_json() const {
    nlohmann::ordered_json j;
    j["n_classes"] = n_classes;
    j["prior_only"] = prior_only;
    j["prior"] = prior;
    j["standardization"] = {{"kept", scaler.kept},
                            {"mean", scaler.mean},
                            {"stdev", scaler.stdev},
                            {"dropped_constant", scaler.dropped}};
    if (rff) {
        j["rff"] = {{"input_dims", rff->input_dims()},
                    {"dims", rff->dims()},
                    {"gamma", rff->gamma()},
                    {"seed", rff->seed()}};
    } else {
        j["rff"] = nullptr;
    }
    j["weights"] = weights;
    j["bias"] = bias;
    return j;
}

LinearModel LinearModel::from_json(const nlohmann::json& j) {
    LinearModel m;
    m.n_classes = j.at("n_classes").get<std::size_t>();
    m.prior_only = j.at("prior_only").get<bool>();
    m.prior = j.at("prior").get<std::vector<double>>();
    const auto& s = j.at("standardization");
    m.scaler.kept = s.at("kept").get<std::vector<std::size_t>>();
    m.scaler.mean = s.at("mean").get<std::vector<double>>();
    m.scaler.stdev = s.at("stdev").get<std::vector<double>>();
    m.scaler.dropped = s.at("dropped_constant").get<std::vector<std::string>>();
    if (!j.at("rff").is_null()) {
        const auto& r = j["rff"];
        m.rff.emplace(r.at("input_dims").get<std::size_t>(), r.at("dims").get<std::size_t>(),
                      r.at("gamma").get<double>(), r.at("seed").get<std::uint64_t>());
    }
    m.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    m.bias = j.at("bias").get<std::vector<double>>();
    if (m.scaler.mean.size() != m.scaler.kept.size() || m.scaler.stdev.size() != m.scaler.kept.size() ||
        m.weights.size() != m.bias.size() || m.prior.size() != m.n_classes) {
        throw std::runtime_error("inconsistent linear parameters");
    }
    return m;
}

}  // namespace codetect
