#pragma once

#include "codetect/corpus/sample.hpp"
#include "codetect/zeroshot/backend.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace codetect {

// Process-level backend protocol: requests are JSONL {id, code}, responses
// are JSONL {id, loglik, perturbation_logliks}.
struct AdapterRecord {
    std::string id;
    double loglik = 0;
    std::vector<double> perturbation_logliks;
};

std::string adapter_request_jsonl(std::span<const CodeSample> samples);
std::string adapter_response_line(const AdapterRecord& r);
std::vector<AdapterRecord> parse_adapter_response(std::string_view jsonl);

/// Runs a shell command with the requests on standard input.
std::vector<AdapterRecord> run_adapter_process(const std::string& command, std::span<const CodeSample> samples);

/// Answers requests from `in` with `backend`. Seeds match curvature_scores.
void serve_adapter(std::istream& in, std::ostream& out, const LikelihoodBackend& backend, std::size_t k,
                   std::uint64_t seed);

/// Replays adapter responses. Looks samples up by code text.
class PrecomputedBackend final : public LikelihoodBackend {
public:
    /// Throws naming the first sample id without a response.
    PrecomputedBackend(std::span<const CodeSample> samples, std::span<const AdapterRecord> records);

    double log_likelihood(std::string_view code) const override;
    PerturbationSet sample_perturbations(std::string_view code, std::size_t k, std::uint64_t seed) const override;

private:
    const AdapterRecord& lookup(std::string_view code) const;
    std::unordered_map<std::string, AdapterRecord> by_code_;
};

}  // namespace codetect
