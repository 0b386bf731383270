#include "codetect/corpus/splits.hpp"

#include "codetect/common.hpp"
#include "codetect/random.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace codetect {

void SplitPlan::validate() const {
    double sum = 0.0;
    for (double r : ratios) {
        if (!(r >= 0.0)) throw validation_error("split ratios must be non-negative");
        sum += r;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw validation_error("split ratios must sum to 1");
    for (const auto& k : stratify_keys) {
        if (k != "label" && k != "language" && k != "source" && k != "generator") {
            throw validation_error("unknown stratify key '" + k + "'");
        }
    }
}

std::array<std::size_t, 3> split_counts(std::size_t n, const std::array<double, 3>& ratios) {
    std::array<std::size_t, 3> counts{};
    std::array<double, 3> frac{};
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        double quota = static_cast<double>(n) * ratios[i];
        if (std::abs(quota - std::round(quota)) < 1e-9) quota = std::round(quota);
        counts[i] = static_cast<std::size_t>(std::floor(quota));
        frac[i] = quota - std::floor(quota);
        assigned += counts[i];
    }
    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++counts[order[k % 3]];
    return counts;
}

std::string stratum_key(const CodeSample& s, const std::vector<std::string>& keys) {
    std::string out;
    for (const auto& k : keys) {
        if (!out.empty()) out += '|';
        out += k + '=';
        if (k == "label") {
            out += to_string(s.label);
        } else if (k == "language") {
            out += name_of(s.language);
        } else if (k == "source") {
            out += name_of(s.source);
        } else if (k == "generator") {
            out += s.generator ? name_of(*s.generator) : std::string("-");
        }
    }
    return out;
}

SplitResult assign_splits(std::vector<CodeSample> samples, const SplitPlan& plan) {
    plan.validate();
    std::map<std::string, std::vector<std::size_t>> strata;
    for (std::size_t i = 0; i < samples.size(); ++i) strata[stratum_key(samples[i], plan.stratify_keys)].push_back(i);

    SplitResult result;
    Rng rng(plan.seed);
    for (auto& [key, members] : strata) {
        if (members.size() < 3) {
            for (std::size_t i : members) samples[i].split = Split::train;
            result.small_strata.push_back(key);
            continue;
        }
        shuffle(std::span<std::size_t>(members), rng);
        const auto counts = split_counts(members.size(), plan.ratios);
        std::size_t k = 0;
        for (std::size_t s = 0; s < 3; ++s) {
            for (std::size_t c = 0; c < counts[s]; ++c) samples[members[k++]].split = static_cast<Split>(s);
        }
    }
    result.samples = std::move(samples);
    return result;
}

}  // namespace codetect
