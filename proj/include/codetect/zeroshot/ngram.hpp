#pragma once

#include "codetect/zeroshot/backend.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace codetect {

/// Byte-level n-gram model with add-k smoothing over all 256 byte values.
/// The first n-1 positions see a context padded with NUL bytes.
class NgramBackend final : public LikelihoodBackend {
public:
    explicit NgramBackend(int order = 4, double add_k = 0.01);

    void train(std::span<const std::string> corpus);

    int order() const { return order_; }
    double add_k() const { return add_k_; }
    const std::string& corpus_digest() const { return corpus_digest_; }

    /// P(next | context), where context holds the previous order-1 bytes.
    double probability(std::uint32_t context, unsigned char next) const;
    std::uint32_t context_at(std::string_view code, std::size_t pos) const;

    double log_likelihood(std::string_view code) const override;
    /// Each position is resampled from the model's conditional given the
    /// original prefix.
    PerturbationSet sample_perturbations(std::string_view code, std::size_t k, std::uint64_t seed) const override;

    std::string to_json() const;
    static NgramBackend from_json(const std::string& text);

private:
    struct Context {
        std::uint64_t total = 0;
        std::vector<std::pair<unsigned char, std::uint32_t>> counts;  // sorted by byte
    };
    const Context* find(std::uint32_t context) const;
    double probability(const Context* ctx, unsigned char next) const;

    int order_;
    double add_k_;
    std::uint32_t mask_;
    std::string corpus_digest_;
    std::unordered_map<std::uint32_t, Context> contexts_;
};

}  // namespace codetect
