#include "codetect/eval/degradation.hpp"

#include "codetect/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

namespace codetect {

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw validation_error("spearman inputs differ in length");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (x.size() < 2) return nan;
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0 || syy == 0) return nan;
    return sxy / std::sqrt(sxx * syy);
}

DegradationCurve degradation_curve(std::span<const double> fractions, std::span<const std::size_t> preds,
                                   std::span<const std::size_t> golds, const LabelSpace& space, std::size_t bins) {
    if (bins == 0) throw validation_error("degradation curve needs at least one bin");
    if (fractions.size() != preds.size() || preds.size() != golds.size()) {
        throw validation_error("fractions, predictions and gold labels differ in length");
    }
    std::vector<std::vector<std::size_t>> members(bins);
    for (std::size_t i = 0; i < fractions.size(); ++i) {
        const double f = fractions[i];
        if (!(f >= 0.0 && f <= 1.0)) throw validation_error("human fraction outside [0, 1]");
        const auto b = std::min(bins - 1, static_cast<std::size_t>(std::floor(f * static_cast<double>(bins))));
        members[b].push_back(i);
    }
    DegradationCurve curve;
    std::vector<double> mid, acc;
    for (std::size_t b = 0; b < bins; ++b) {
        DegradationBin bin;
        bin.lower = static_cast<double>(b) / static_cast<double>(bins);
        bin.upper = static_cast<double>(b + 1) / static_cast<double>(bins);
        bin.n = members[b].size();
        if (bin.n > 0) {
            std::vector<std::size_t> p, g;
            for (auto i : members[b]) {
                p.push_back(preds[i]);
                g.push_back(golds[i]);
            }
            bin.metrics = macro_metrics(p, g, space);
            if (!acc.empty() && bin.metrics.accuracy > acc.back()) curve.non_increasing = false;
            mid.push_back((bin.lower + bin.upper) / 2);
            acc.push_back(bin.metrics.accuracy);
        }
        curve.bins.push_back(bin);
    }
    curve.spearman_rho = spearman(mid, acc);
    return curve;
}

std::string DegradationCurve::to_json() const {
    nlohmann::ordered_json j;
    auto& jb = j["bins"] = nlohmann::ordered_json::array();
    for (const auto& b : bins) {
        nlohmann::ordered_json e;
        e["lower"] = b.lower;
        e["upper"] = b.upper;
        e["n"] = b.n;
        if (b.n > 0) {
            e["A"] = b.metrics.accuracy;
            e["F"] = b.metrics.f1;
            e["R"] = b.metrics.recall;
        }
        jb.push_back(std::move(e));
    }
    j["spearman_rho"] = std::isnan(spearman_rho) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(spearman_rho);
    j["non_increasing"] = non_increasing;
    return j.dump(2) + "\n";
}

}  // namespace codetect
