#include "codetect/zeroshot/ngram.hpp"

#include "codetect/common.hpp"
#include "codetect/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include <json.hpp>

namespace codetect {

NgramBackend::NgramBackend(int order, double add_k) : order_(order), add_k_(add_k) {
    if (order < 1 || order > 4) throw validation_error("n-gram order must be in [1, 4]");
    if (!(add_k > 0)) throw validation_error("n-gram add-k constant must be positive");
    mask_ = order == 1 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << (8 * (order - 1))) - 1);
}

std::uint32_t NgramBackend::context_at(std::string_view code, std::size_t pos) const {
    std::uint32_t ctx = 0;
    const std::size_t width = static_cast<std::size_t>(order_ - 1);
    for (std::size_t j = width; j > 0; --j) {
        const unsigned char c = pos >= j ? static_cast<unsigned char>(code[pos - j]) : 0;
        ctx = (ctx << 8) | c;
    }
    return ctx & mask_;
}

void NgramBackend::train(std::span<const std::string> corpus) {
    std::map<std::uint32_t, std::map<unsigned char, std::uint32_t>> counts;
    std::string digest_input;
    for (const auto& text : corpus) {
        digest_input += sha256_hex(text);
        for (std::size_t i = 0; i < text.size(); ++i) {
            ++counts[context_at(text, i)][static_cast<unsigned char>(text[i])];
        }
    }
    contexts_.clear();
    for (const auto& [ctx, next] : counts) {
        Context c;
        for (const auto& [byte, n] : next) {
            c.counts.emplace_back(byte, n);
            c.total += n;
        }
        contexts_.emplace(ctx, std::move(c));
    }
    corpus_digest_ = sha256_hex(digest_input);
}

const NgramBackend::Context* NgramBackend::find(std::uint32_t context) const {
    auto it = contexts_.find(context);
    return it == contexts_.end() ? nullptr : &it->second;
}

double NgramBackend::probability(const Context* ctx, unsigned char next) const {
    double count = 0;
    double total = 0;
    if (ctx) {
        total = static_cast<double>(ctx->total);
        auto it = std::lower_bound(ctx->counts.begin(), ctx->counts.end(), next,
                                   [](const auto& p, unsigned char b) { return p.first < b; });
        if (it != ctx->counts.end() && it->first == next) count = it->second;
    }
    return (count + add_k_) / (total + 256.0 * add_k_);
}

double NgramBackend::probability(std::uint32_t context, unsigned char next) const {
    return probability(find(context), next);
}

double NgramBackend::log_likelihood(std::string_view code) const {
    double ll = 0;
    for (std::size_t i = 0; i < code.size(); ++i) {
        ll += std::log(probability(find(context_at(code, i)), static_cast<unsigned char>(code[i])));
    }
    return ll;
}

PerturbationSet NgramBackend::sample_perturbations(std::string_view code, std::size_t k, std::uint64_t seed) const {
    std::vector<const Context*> ctx(code.size());
    for (std::size_t i = 0; i < code.size(); ++i) ctx[i] = find(context_at(code, i));

    PerturbationSet out;
    out.sequences.assign(k, std::string(code.size(), '\0'));
    out.logliks.assign(k, 0.0);
    for (std::size_t s = 0; s < k; ++s) {
        Rng rng(mix_seed(seed, s));
        std::string& seq = out.sequences[s];
        double ll = 0;
        for (std::size_t i = 0; i < code.size(); ++i) {
            const Context* c = ctx[i];
            const double total = c ? static_cast<double>(c->total) : 0.0;
            // (count + k) / (total + 256 k) is a mixture of the empirical
            // distribution and a uniform one.
            const double u = uniform01(rng) * (total + 256.0 * add_k_);
            unsigned char byte;
            if (u < total) {
                double acc = 0;
                byte = c->counts.back().first;
                for (const auto& [b, n] : c->counts) {
                    acc += n;
                    if (u < acc) {
                        byte = b;
                        break;
                    }
                }
            } else {
                byte = static_cast<unsigned char>(uniform_index(rng, 256));
            }
            seq[i] = static_cast<char>(byte);
            ll += std::log(probability(c, byte));
        }
        out.logliks[s] = ll;
    }
    return out;
}

std::string NgramBackend::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = "char-ngram";
    j["order"] = order_;
    j["add_k"] = add_k_;
    j["corpus_digest"] = corpus_digest_;
    std::map<std::uint32_t, const Context*> sorted;
    for (const auto& [k, v] : contexts_) sorted.emplace(k, &v);
    auto& ctxs = j["contexts"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : sorted) {
        char key[16];
        std::snprintf(key, sizeof key, "%06x", k);
        auto arr = nlohmann::ordered_json::array();
        for (const auto& [b, n] : v->counts) arr.push_back({b, n});
        ctxs[key] = std::move(arr);
    }
    return j.dump() + "\n";
}

NgramBackend NgramBackend::from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        if (j.value("kind", "") != "char-ngram") throw validation_error("not a character n-gram model");
        NgramBackend m(j.at("order").get<int>(), j.at("add_k").get<double>());
        m.corpus_digest_ = j.at("corpus_digest").get<std::string>();
        for (const auto& [key, arr] : j.at("contexts").items()) {
            Context c;
            for (const auto& p : arr) {
                c.counts.emplace_back(p.at(0).get<unsigned char>(), p.at(1).get<std::uint32_t>());
                c.total += c.counts.back().second;
            }
            std::sort(c.counts.begin(), c.counts.end());
            m.contexts_.emplace(static_cast<std::uint32_t>(std::stoul(key, nullptr, 16)), std::move(c));
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("malformed n-gram model: ") + e.what());
    }
}

}  // namespace codetect
