#include "codetect/models/gbdt.hpp"

#include "codetect/common.hpp"
#include "codetect/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace codetect {

void GbdtConfig::validate() const {
    if (trees < 1) throw validation_error("gbdt.trees must be at least 1");
    if (!(learning_rate > 0)) throw validation_error("gbdt.learning_rate must be positive");
    if (max_depth < 0) throw validation_error("gbdt.max_depth must be non-negative");
    if (min_samples_leaf < 1) throw validation_error("gbdt.min_samples_leaf must be at least 1");
    if (!(subsample > 0 && subsample <= 1)) throw validation_error("gbdt.subsample must be in (0, 1]");
    if (l2 < 0) throw validation_error("gbdt.l2 must be non-negative");
    if (max_bins < 2 || max_bins > 65000) throw validation_error("gbdt.max_bins must be in [2, 65000]");
}

nlohmann::ordered_json GbdtConfig::to_json() const {
    nlohmann::ordered_json j;
    j["trees"] = trees;
    j["learning_rate"] = learning_rate;
    j["max_depth"] = max_depth;
    j["min_samples_leaf"] = min_samples_leaf;
    j["subsample"] = subsample;
    j["l2"] = l2;
    j["max_bins"] = max_bins;
    j["loss"] = "logistic";
    j["seed"] = seed;
    return j;
}

GbdtConfig GbdtConfig::from_json(const nlohmann::json& j) {
    GbdtConfig c;
    c.trees = j.value("trees", c.trees);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.max_depth = j.value("max_depth", c.max_depth);
    c.min_samples_leaf = j.value("min_samples_leaf", c.min_samples_leaf);
    c.subsample = j.value("subsample", c.subsample);
    c.l2 = j.value("l2", c.l2);
    c.max_bins = j.value("max_bins", c.max_bins);
    if (j.contains("loss") && j["loss"] != "logistic") throw validation_error("gbdt.loss must be logistic");
    c.seed = j.value("seed", c.seed);
    return c;
}

double RegressionTree::predict(std::span<const double> row) const {
    std::size_t i = 0;
    while (!nodes[i].is_leaf()) {
        const TreeNode& n = nodes[i];
        const double x = row[static_cast<std::size_t>(n.feature)];
        const bool left = std::isnan(x) ? n.default_left : x <= n.threshold;
        i = static_cast<std::size_t>(left ? n.left : n.right);
    }
    return nodes[i].value;
}

double Booster::margin(std::span<const double> row) const {
    double m = base_score;
    for (const auto& t : trees) m += t.predict(row);
    return m;
}

namespace {

double sigmoid(double m) { return m >= 0 ? 1.0 / (1.0 + std::exp(-m)) : std::exp(m) / (1.0 + std::exp(m)); }

// log(1 + e^m) - y m
double logistic_loss(double m, double y) { return std::max(m, 0.0) + std::log1p(std::exp(-std::abs(m))) - y * m; }

// Sums of gradients, hessians and losses are kept in 2^-32 fixed point so
// that they do not depend on row order or thread count.
constexpr double kScale = 4294967296.0;
__extension__ typedef __int128 Wide;

std::int64_t to_fixed(double v) { return std::llround(v * kScale); }

struct Cell {
    std::int64_t g = 0;
    std::int64_t h = 0;
    std::int64_t n = 0;

    Cell& operator+=(const Cell& o) {
        g += o.g;
        h += o.h;
        n += o.n;
        return *this;
    }
    Cell& operator-=(const Cell& o) {
        g -= o.g;
        h -= o.h;
        n -= o.n;
        return *this;
    }
};

Cell operator-(Cell a, const Cell& b) { return a -= b; }

double midpoint(double a, double b) {
    const double m = a + (b - a) / 2;
    return m < b ? m : a;
}

// Quantile bins per feature. Bin b of a value x is the index of the first cut
// >= x, so x <= cuts[b] exactly when its bin is <= b. The last bin holds NaN.
struct BinnedMatrix {
    std::size_t rows = 0;
    std::vector<std::vector<double>> cuts;
    std::vector<std::size_t> offset;  // first histogram cell per feature
    std::size_t cells = 0;
    std::vector<std::uint16_t> codes;  // column-major

    std::size_t bins(std::size_t f) const { return cuts[f].size() + 2; }
    std::uint16_t missing(std::size_t f) const { return static_cast<std::uint16_t>(cuts[f].size() + 1); }
    const std::uint16_t* column(std::size_t f) const { return codes.data() + f * rows; }
};

std::vector<double> compute_cuts(std::vector<double> v, int max_bins) {
    std::sort(v.begin(), v.end());
    std::vector<double> u = v;
    u.erase(std::unique(u.begin(), u.end()), u.end());
    std::vector<double> cuts;
    if (u.size() <= 1) return cuts;
    if (u.size() <= static_cast<std::size_t>(max_bins)) {
        for (std::size_t i = 0; i + 1 < u.size(); ++i) cuts.push_back(midpoint(u[i], u[i + 1]));
        return cuts;
    }
    for (int k = 1; k < max_bins; ++k) {
        const double at = v[static_cast<std::size_t>(k) * v.size() / static_cast<std::size_t>(max_bins)];
        const auto j = static_cast<std::size_t>(std::lower_bound(u.begin(), u.end(), at) - u.begin());
        if (j + 1 >= u.size()) continue;
        const double c = midpoint(u[j], u[j + 1]);
        if (cuts.empty() || c > cuts.back()) cuts.push_back(c);
    }
    return cuts;
}

BinnedMatrix bin_matrix(const FeatureMatrix& m, int max_bins, Exec exec) {
    BinnedMatrix b;
    b.rows = m.rows();
    const std::size_t d = m.cols();
    b.cuts.resize(d);
    b.codes.resize(d * b.rows);
    const auto nf = static_cast<std::ptrdiff_t>(d);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (std::ptrdiff_t fi = 0; fi < nf; ++fi) {
        const auto f = static_cast<std::size_t>(fi);
        std::vector<double> present;
        present.reserve(b.rows);
        for (std::size_t r = 0; r < b.rows; ++r) {
            if (!std::isnan(m.at(r, f))) present.push_back(m.at(r, f));
        }
        b.cuts[f] = compute_cuts(std::move(present), max_bins);
        const auto& cuts = b.cuts[f];
        for (std::size_t r = 0; r < b.rows; ++r) {
            const double x = m.at(r, f);
            b.codes[f * b.rows + r] =
                std::isnan(x) ? static_cast<std::uint16_t>(cuts.size() + 1)
                              : static_cast<std::uint16_t>(std::lower_bound(cuts.begin(), cuts.end(), x) - cuts.begin());
        }
    }
    b.offset.resize(d);
    for (std::size_t f = 0; f < d; ++f) {
        b.offset[f] = b.cells;
        b.cells += b.bins(f);
    }
    return b;
}

struct Split {
    double gain = 0;
    std::size_t feature = 0;
    std::size_t bin = 0;
    bool default_left = true;
    bool found = false;
};

class TreeGrower {
public:
    TreeGrower(const BinnedMatrix& bins, const GbdtConfig& cfg, Exec exec) : bins_(bins), cfg_(cfg), exec_(exec) {}

    // Grows one tree on `rows`. `leaf_of` receives each row's leaf index.
    RegressionTree grow(std::vector<std::uint32_t> rows, const std::vector<std::int64_t>& g,
                        const std::vector<std::int64_t>& h, const std::vector<double>& margin,
                        const std::vector<double>& target, std::vector<int>& leaf_of) {
        g_ = &g;
        h_ = &h;
        RegressionTree tree;
        struct Pending {
            int node;
            int depth;
            std::vector<std::uint32_t> rows;
            std::vector<Cell> hist;
        };
        std::vector<Pending> queue;
        tree.nodes.emplace_back();
        queue.push_back({0, 0, std::move(rows), {}});
        queue.back().hist = histogram(queue.back().rows);

        for (std::size_t q = 0; q < queue.size(); ++q) {
            Pending cur = std::move(queue[q]);
            const Cell total = feature_total(cur.hist, 0);
            tree.nodes[cur.node].count = static_cast<std::size_t>(total.n);
            Split best;
            if (cur.depth < cfg_.max_depth) best = find_split(cur.hist, total);
            if (!best.found) {
                tree.nodes[cur.node].value = leaf_value(total, cur.rows, margin, target);
                for (auto r : cur.rows) leaf_of[r] = cur.node;
                continue;
            }
            const std::size_t f = best.feature;
            const std::uint16_t* code = bins_.column(f);
            const std::uint16_t miss = bins_.missing(f);
            std::vector<std::uint32_t> left, right;
            for (auto r : cur.rows) {
                const bool go_left = code[r] == miss ? best.default_left : code[r] <= best.bin;
                (go_left ? left : right).push_back(r);
            }
            const int li = static_cast<int>(tree.nodes.size());
            tree.nodes.emplace_back();
            tree.nodes.emplace_back();
            TreeNode& node = tree.nodes[cur.node];
            node.feature = static_cast<int>(f);
            node.threshold = bins_.cuts[f][best.bin];
            node.default_left = best.default_left;
            node.gain = best.gain;
            node.left = li;
            node.right = li + 1;

            // Build the smaller child's histogram and derive the other.
            std::vector<Cell> small = histogram(left.size() <= right.size() ? left : right);
            std::vector<Cell> large = std::move(cur.hist);
            for (std::size_t c = 0; c < large.size(); ++c) large[c] -= small[c];
            const bool left_small = left.size() <= right.size();
            queue.push_back({li, cur.depth + 1, std::move(left), left_small ? std::move(small) : std::move(large)});
            queue.push_back({li + 1, cur.depth + 1, std::move(right), left_small ? std::move(large) : std::move(small)});
        }
        return tree;
    }

private:
    std::vector<Cell> histogram(const std::vector<std::uint32_t>& rows) const {
        std::vector<Cell> hist(bins_.cells);
        const auto nf = static_cast<std::ptrdiff_t>(bins_.cuts.size());
        const auto& g = *g_;
        const auto& h = *h_;
#pragma omp parallel for schedule(dynamic) if (exec_ == Exec::parallel)
        for (std::ptrdiff_t fi = 0; fi < nf; ++fi) {
            const auto f = static_cast<std::size_t>(fi);
            Cell* out = hist.data() + bins_.offset[f];
            const std::uint16_t* code = bins_.column(f);
            for (auto r : rows) {
                Cell& c = out[code[r]];
                c.g += g[r];
                c.h += h[r];
                c.n += 1;
            }
        }
        return hist;
    }

    Cell feature_total(const std::vector<Cell>& hist, std::size_t f) const {
        Cell t;
        for (std::size_t b = 0; b < bins_.bins(f); ++b) t += hist[bins_.offset[f] + b];
        return t;
    }

    double score(const Cell& c) const {
        const double g = static_cast<double>(c.g) / kScale;
        const double h = static_cast<double>(c.h) / kScale;
        return g * g / (h + cfg_.l2);
    }

    Split best_for_feature(const std::vector<Cell>& hist, const Cell& total, std::size_t f) const {
        Split best;
        const Cell* cells = hist.data() + bins_.offset[f];
        const Cell miss = cells[bins_.missing(f)];
        const double parent = score(total);
        const auto min_leaf = static_cast<std::int64_t>(cfg_.min_samples_leaf);
        Cell acc;
        for (std::size_t b = 0; b < bins_.cuts[f].size(); ++b) {
            acc += cells[b];
            for (bool default_left : {true, false}) {
                if (!default_left && miss.n == 0) continue;
                Cell left = acc;
                if (default_left) left += miss;
                const Cell right = total - left;
                if (left.n < min_leaf || right.n < min_leaf) continue;
                const double gain = 0.5 * (score(left) + score(right) - parent);
                if (gain > best.gain) best = {gain, f, b, default_left, true};
            }
        }
        return best;
    }

    Split find_split(const std::vector<Cell>& hist, const Cell& total) const {
        const std::size_t d = bins_.cuts.size();
        std::vector<Split> per_feature(d);
        const auto nf = static_cast<std::ptrdiff_t>(d);
#pragma omp parallel for schedule(dynamic) if (exec_ == Exec::parallel)
        for (std::ptrdiff_t f = 0; f < nf; ++f) {
            per_feature[static_cast<std::size_t>(f)] = best_for_feature(hist, total, static_cast<std::size_t>(f));
        }
        Split best;
        for (const auto& s : per_feature) {
            if (s.found && s.gain > best.gain) best = s;
        }
        return best;
    }

    // Regularized Newton step, halved until the leaf's loss does not increase.
    double leaf_value(const Cell& total, const std::vector<std::uint32_t>& rows, const std::vector<double>& margin,
                      const std::vector<double>& target) const {
        const double g = static_cast<double>(total.g) / kScale;
        const double h = static_cast<double>(total.h) / kScale;
        double step = cfg_.learning_rate * (-g / (h + cfg_.l2));
        if (!std::isfinite(step) || rows.empty()) return 0.0;
        auto loss = [&](double delta) {
            Wide sum = 0;
            for (auto r : rows) sum += to_fixed(logistic_loss(margin[r] + delta, target[r]));
            return sum;
        };
        const Wide before = loss(0.0);
        for (int attempt = 0; attempt < 40; ++attempt) {
            if (loss(step) <= before) return step;
            step /= 2;
        }
        return 0.0;
    }

    const BinnedMatrix& bins_;
    const GbdtConfig& cfg_;
    Exec exec_;
    const std::vector<std::int64_t>* g_ = nullptr;
    const std::vector<std::int64_t>* h_ = nullptr;
};

double mean_loss(const std::vector<double>& margin, const std::vector<double>& target) {
    Wide sum = 0;
    for (std::size_t i = 0; i < margin.size(); ++i) sum += to_fixed(logistic_loss(margin[i], target[i]));
    return static_cast<double>(sum) / kScale / static_cast<double>(margin.size());
}

Booster train_booster(const FeatureMatrix& m, const BinnedMatrix& bins, const std::vector<double>& target,
                      const GbdtConfig& cfg, std::uint64_t seed, Exec exec) {
    const std::size_t n = m.rows();
    Booster booster;
    double p = std::accumulate(target.begin(), target.end(), 0.0) / static_cast<double>(n);
    p = std::clamp(p, 1e-6, 1.0 - 1e-6);
    booster.base_score = std::log(p / (1.0 - p));
    std::vector<double> margin(n, booster.base_score);
    booster.training_loss.push_back(mean_loss(margin, target));

    std::vector<std::int64_t> g(n), h(n);
    std::vector<int> leaf_of(n, -1);
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    const auto sample_size =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg.subsample * static_cast<double>(n))));
    Rng rng(seed);
    TreeGrower grower(bins, cfg, exec);

    for (int t = 0; t < cfg.trees; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            const double pi = sigmoid(margin[i]);
            g[i] = to_fixed(pi - target[i]);
            h[i] = to_fixed(pi * (1.0 - pi));
        }
        std::vector<std::uint32_t> rows = all;
        if (sample_size < n) {
            shuffle(std::span<std::uint32_t>(rows), rng);
            rows.resize(sample_size);
            std::sort(rows.begin(), rows.end());
        }
        std::fill(leaf_of.begin(), leaf_of.end(), -1);
        RegressionTree tree = grower.grow(rows, g, h, margin, target, leaf_of);
        for (std::size_t i = 0; i < n; ++i) {
            margin[i] += leaf_of[i] >= 0 ? tree.nodes[static_cast<std::size_t>(leaf_of[i])].value : tree.predict(m.row(i));
        }
        booster.trees.push_back(std::move(tree));
        booster.training_loss.push_back(mean_loss(margin, target));
    }
    return booster;
}

std::vector<double> softmax(const std::vector<double>& m) {
    const double top = *std::max_element(m.begin(), m.end());
    std::vector<double> out(m.size());
    double sum = 0;
    for (std::size_t k = 0; k < m.size(); ++k) sum += out[k] = std::exp(m[k] - top);
    for (auto& v : out) v /= sum;
    return out;
}

}  // namespace

std::vector<double> GbdtModel::scores(std::span<const double> row) const {
    if (n_classes == 2) {
        const double p = sigmoid(boosters.at(0).margin(row));
        return {1.0 - p, p};
    }
    std::vector<double> margins(boosters.size());
    for (std::size_t k = 0; k < boosters.size(); ++k) margins[k] = boosters[k].margin(row);
    return softmax(margins);
}

std::vector<double> GbdtModel::split_gain(std::size_t n_features) const {
    std::vector<double> gain(n_features, 0.0);
    for (const auto& b : boosters) {
        for (const auto& t : b.trees) {
            for (const auto& node : t.nodes) {
                if (!node.is_leaf()) gain.at(static_cast<std::size_t>(node.feature)) += node.gain;
            }
        }
    }
    return gain;
}

GbdtModel fit_gbdt(const FeatureMatrix& m, std::span<const std::size_t> y, std::size_t n_classes,
                   const GbdtConfig& cfg, Exec exec) {
    cfg.validate();
    if (m.rows() == 0) throw stage_error("no training rows");
    if (m.rows() > std::numeric_limits<std::uint32_t>::max()) throw stage_error("too many training rows");
    const BinnedMatrix bins = bin_matrix(m, cfg.max_bins, exec);
    GbdtModel model;
    model.n_classes = n_classes;
    const std::size_t boosters = n_classes == 2 ? 1 : n_classes;
    for (std::size_t k = 0; k < boosters; ++k) {
        const std::size_t positive = boosters == 1 ? 1 : k;
        std::vector<double> target(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) target[i] = y[i] == positive ? 1.0 : 0.0;
        model.boosters.push_back(train_booster(m, bins, target, cfg, mix_seed(cfg.seed, k), exec));
    }
    return model;
}

nlohmann::ordered_json GbdtModel::to_json() const {
    nlohmann::ordered_json j;
    j["n_classes"] = n_classes;
    j["node_layout"] = {"feature", "threshold", "default_left", "left", "right", "value", "gain", "count"};
    auto& out = j["boosters"] = nlohmann::ordered_json::array();
    for (const auto& b : boosters) {
        nlohmann::ordered_json jb;
        jb["base_score"] = b.base_score;
        jb["training_loss"] = b.training_loss;
        auto& trees = jb["trees"] = nlohmann::ordered_json::array();
        for (const auto& t : b.trees) {
            auto nodes = nlohmann::ordered_json::array();
            for (const auto& n : t.nodes) {
                nodes.push_back({n.feature, n.threshold, n.default_left, n.left, n.right, n.value, n.gain, n.count});
            }
            trees.push_back(std::move(nodes));
        }
        out.push_back(std::move(jb));
    }
    return j;
}

GbdtModel GbdtModel::from_json(const nlohmann::json& j) {
    GbdtModel m;
    m.n_classes = j.at("n_classes").get<std::size_t>();
    for (const auto& jb : j.at("boosters")) {
        Booster b;
        b.base_score = jb.at("base_score").get<double>();
        b.training_loss = jb.at("training_loss").get<std::vector<double>>();
        for (const auto& jt : jb.at("trees")) {
            RegressionTree t;
            for (const auto& jn : jt) {
                if (jn.size() != 8) throw std::runtime_error("tree node has the wrong arity");
                TreeNode n;
                n.feature = jn[0].get<int>();
                n.threshold = jn[1].get<double>();
                n.default_left = jn[2].get<bool>();
                n.left = jn[3].get<int>();
                n.right = jn[4].get<int>();
                n.value = jn[5].get<double>();
                n.gain = jn[6].get<double>();
                n.count = jn[7].get<std::size_t>();
                t.nodes.push_back(n);
            }
            const auto size = static_cast<int>(t.nodes.size());
            if (size == 0) throw std::runtime_error("empty tree");
            for (int i = 0; i < size; ++i) {
                const TreeNode& n = t.nodes[static_cast<std::size_t>(i)];
                if (!n.is_leaf() && (n.left <= i || n.right <= i || n.left >= size || n.right >= size)) {
                    throw std::runtime_error("tree child index out of range");
                }
            }
            b.trees.push_back(std::move(t));
        }
        m.boosters.push_back(std::move(b));
    }
    const std::size_t expected = m.n_classes == 2 ? 1 : m.n_classes;
    if (m.boosters.size() != expected) throw std::runtime_error("booster count does not match class count");
    return m;
}

}  // namespace codetect
