#include "codetect/zeroshot/curvature.hpp"

#include "codetect/common.hpp"
#include "codetect/random.hpp"

#include <algorithm>
#include <cmath>

namespace codetect {

double curvature_statistic(double loglik, std::span<const double> perturbation_logliks) {
    const auto k = static_cast<double>(perturbation_logliks.size());
    double mean = 0;
    for (double v : perturbation_logliks) mean += v;
    mean /= k;
    double var = 0;
    for (double v : perturbation_logliks) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / k);
    return (loglik - mean) / std::max(sd, kMinCurvatureStdev);
}

double curvature_score(std::string_view code, const LikelihoodBackend& backend, std::size_t k, std::uint64_t seed) {
    if (code.empty()) throw validation_error("empty input");
    if (k < 2) throw validation_error("curvature needs at least two perturbations");
    double ll = 0;
    PerturbationSet perturbed;
    try {
        ll = backend.log_likelihood(code);
        perturbed = backend.sample_perturbations(code, k, seed);
    } catch (const std::exception& e) {
        throw stage_error(std::string("likelihood backend failed: ") + e.what());
    }
    if (perturbed.logliks.size() < 2) throw stage_error("likelihood backend returned fewer than two perturbations");
    if (!std::isfinite(ll)) throw stage_error("likelihood backend returned a non-finite log-likelihood");
    return curvature_statistic(ll, perturbed.logliks);
}

std::vector<double> curvature_scores(std::span<const CodeSample> samples, const LikelihoodBackend& backend,
                                     std::size_t k, std::uint64_t seed, Exec exec) {
    std::vector<double> out(samples.size());
    const auto n = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        const std::uint64_t stream = std::stoull(content_id(s.code), nullptr, 16);
        out[static_cast<std::size_t>(i)] = curvature_score(s.code, backend, k, mix_seed(seed, stream));
    }
    return out;
}

namespace {

double f1(double tp, double fp, double fn) {
    const double denom = 2 * tp + fp + fn;
    return denom == 0 ? 0.0 : 2 * tp / denom;
}

}  // namespace

ThresholdFit fit_threshold(std::span<const double> scores, const std::vector<bool>& is_llm) {
    if (scores.size() != is_llm.size()) throw validation_error("scores and gold labels differ in length");
    std::vector<double> llm, human;
    for (std::size_t i = 0; i < scores.size(); ++i) (is_llm[i] ? llm : human).push_back(scores[i]);
    if (llm.empty() || human.empty()) throw validation_error("threshold fitting needs both classes in the gold labels");
    std::sort(llm.begin(), llm.end());
    std::sort(human.begin(), human.end());

    std::vector<double> distinct(scores.begin(), scores.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<double> candidates{distinct.front()};
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
        candidates.push_back(distinct[i] + (distinct[i + 1] - distinct[i]) / 2);
    }

    auto at_least = [](const std::vector<double>& v, double t) {
        return static_cast<double>(v.end() - std::lower_bound(v.begin(), v.end(), t));
    };
    const auto n_llm = static_cast<double>(llm.size());
    const auto n_human = static_cast<double>(human.size());
    ThresholdFit fit;
    fit.macro_f1 = -1;
    fit.inverted_macro_f1 = -1;
    for (double t : candidates) {
        const double llm_hi = at_least(llm, t);
        const double human_hi = at_least(human, t);
        const double llm_lo = n_llm - llm_hi;
        const double human_lo = n_human - human_hi;
        // predicted llm iff score >= t
        const double direct = (f1(llm_hi, human_hi, llm_lo) + f1(human_lo, llm_lo, human_hi)) / 2;
        // predicted llm iff score < t
        const double reversed = (f1(llm_lo, human_lo, llm_hi) + f1(human_hi, llm_hi, human_lo)) / 2;
        if (direct > fit.macro_f1) {
            fit.macro_f1 = direct;
            fit.threshold = t;
        }
        fit.inverted_macro_f1 = std::max(fit.inverted_macro_f1, reversed);
    }
    fit.inverted_polarity = fit.inverted_macro_f1 > fit.macro_f1 + 1e-12;
    return fit;
}

Label classify_zero_shot(std::string_view code, const LikelihoodBackend& backend, double threshold, std::size_t k,
                         std::uint64_t seed) {
    return classify_zero_shot_score(curvature_score(code, backend, k, seed), threshold) ? Label::llm : Label::human;
}

}  // namespace codetect
