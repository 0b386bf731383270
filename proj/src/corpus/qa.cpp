#include "codetect/corpus/qa.hpp"

#include "codetect/common.hpp"
#include "codetect/corpus/comments.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include <json.hpp>

namespace codetect {

void QaConfig::validate() const {
    if (low_percentile < 0 || low_percentile > 50) {
        throw validation_error("qa.low_percentile must lie in [0,50]");
    }
    if (high_percentile <= 50 || high_percentile > 100) {
        throw validation_error("qa.high_percentile must lie in (50,100]");
    }
    if (low_percentile >= high_percentile) {
        throw validation_error("qa.low_percentile must be below qa.high_percentile");
    }
}

std::size_t count_tokens(std::string_view code) {
    std::size_t n = 0;
    bool in_word = false;
    for (char ch : code) {
        const auto u = static_cast<unsigned char>(ch);
        if (is_space(ch)) {
            in_word = false;
        } else if (std::isalnum(u) || ch == '_' || u >= 0x80) {
            if (!in_word) ++n;
            in_word = true;
        } else {
            ++n;
            in_word = false;
        }
    }
    return n;
}

std::size_t nearest_rank(std::span<const std::size_t> values, int percentile) {
    if (values.empty()) throw validation_error("percentile of an empty set");
    std::vector<std::size_t> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    std::size_t rank = (static_cast<std::size_t>(percentile) * n + 99) / 100;
    rank = std::clamp<std::size_t>(rank, 1, n);
    return sorted[rank - 1];
}

namespace {

std::vector<std::size_t> token_counts(std::span<const CodeSample> samples, Exec exec) {
    std::vector<std::size_t> counts(samples.size());
    const auto n = static_cast<std::ptrdiff_t>(samples.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::ptrdiff_t i = 0; i < n; ++i) counts[i] = count_tokens(samples[i].code);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) counts[i] = count_tokens(samples[i].code);
    }
    return counts;
}

}  // namespace

LengthFilterResult filter_by_length(std::span<const CodeSample> samples, const QaConfig& cfg, Exec exec) {
    cfg.validate();
    if (samples.empty()) throw stage_error("empty corpus");

    const std::vector<std::size_t> counts = token_counts(samples, exec);
    auto group_of = [&](const CodeSample& s) { return cfg.per_language ? name_of(s.language) : std::string("*"); };

    std::map<std::string, std::vector<std::size_t>> grouped;
    for (std::size_t i = 0; i < samples.size(); ++i) grouped[group_of(samples[i])].push_back(counts[i]);

    LengthFilterResult result;
    for (const auto& [group, values] : grouped) {
        result.cuts[group] = {nearest_rank(values, cfg.low_percentile), nearest_rank(values, cfg.high_percentile)};
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const LengthCut& cut = result.cuts.at(group_of(samples[i]));
        if (counts[i] < cut.low || counts[i] > cut.high) {
            ++result.removed;
        } else {
            result.kept.push_back(samples[i]);
        }
    }
    return result;
}

std::string dedup_key(const CodeSample& sample) {
    const std::string stripped =
        is_supported(sample.language) ? strip_comments(sample.code, sample.language.value) : sample.code;
    std::string key;
    bool pending_blank = false;
    std::size_t start = 0;
    while (start <= stripped.size()) {
        auto end = stripped.find('\n', start);
        if (end == std::string::npos) end = stripped.size();
        const std::string_view line = trim_right(std::string_view(stripped).substr(start, end - start));
        if (line.empty()) {
            pending_blank = !key.empty();
        } else {
            if (!key.empty()) key += pending_blank ? "\n\n" : "\n";
            key += line;
            pending_blank = false;
        }
        start = end + 1;
    }
    return key;
}

std::vector<CodeSample> deduplicate(std::span<const CodeSample> samples, Exec exec) {
    std::vector<std::string> keys(samples.size());
    const auto n = static_cast<std::ptrdiff_t>(samples.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::ptrdiff_t i = 0; i < n; ++i) keys[i] = dedup_key(samples[i]);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) keys[i] = dedup_key(samples[i]);
    }
    std::unordered_set<std::string> seen;
    std::vector<CodeSample> out;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (seen.insert(std::move(keys[i])).second) out.push_back(samples[i]);
    }
    return out;
}

QaResult run_qa(std::span<const CodeSample> samples, const QaConfig& cfg, Exec exec) {
    cfg.validate();
    QaResult res;
    res.report.ingested = samples.size();

    std::vector<CodeSample> stripped(samples.begin(), samples.end());
    std::vector<char> usable(samples.size(), 1);
    std::vector<char> changed(samples.size(), 0);
    const auto n = static_cast<std::ptrdiff_t>(samples.size());
    auto strip_one = [&](std::ptrdiff_t i) {
        CodeSample& s = stripped[i];
        if (!is_supported(s.language)) {
            usable[i] = 0;
            return;
        }
        std::string code = strip_comments(s.code, s.language.value);
        changed[i] = code != s.code;
        s.code = std::move(code);
        if (is_blank(s.code)) usable[i] = 0;
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::ptrdiff_t i = 0; i < n; ++i) strip_one(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) strip_one(i);
    }

    std::vector<CodeSample> clean;
    for (std::size_t i = 0; i < stripped.size(); ++i) {
        res.report.comment_stripped += changed[i] ? 1 : 0;
        if (usable[i]) {
            clean.push_back(std::move(stripped[i]));
        } else {
            ++res.report.dropped_unparsable;
        }
    }
    if (clean.empty()) throw stage_error("empty corpus");

    LengthFilterResult filtered = filter_by_length(clean, cfg, exec);
    res.report.length_filtered = filtered.removed;
    res.report.cuts = filtered.cuts;

    if (cfg.dedup) {
        res.samples = deduplicate(filtered.kept, exec);
        res.report.deduplicated = filtered.kept.size() - res.samples.size();
    } else {
        res.samples = std::move(filtered.kept);
    }
    res.report.retained = res.samples.size();
    return res;
}

std::string QaReport::to_json(const std::string& config_digest) const {
    nlohmann::ordered_json j;
    if (!config_digest.empty()) j["config_digest"] = config_digest;
    j["ingested"] = ingested;
    j["comment_stripped"] = comment_stripped;
    j["length_filtered"] = length_filtered;
    j["deduplicated"] = deduplicated;
    j["dropped_unparsable"] = dropped_unparsable;
    j["retained"] = retained;
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (const auto& [group, cut] : cuts) c[group] = {{"low", cut.low}, {"high", cut.high}};
    j["percentile_cuts"] = c;
    j["small_strata"] = small_strata;
    return j.dump(2);
}

}  // namespace codetect
