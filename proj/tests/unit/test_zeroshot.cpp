#include "codetect/corpus/ingest.hpp"
#include "codetect/random.hpp"
#include "codetect/zeroshot/adapter.hpp"
#include "codetect/zeroshot/curvature.hpp"
#include "codetect/zeroshot/ngram.hpp"
#include "synthetic.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace codetect;

namespace {

// Fixed answers regardless of input.
class ScriptedBackend final : public LikelihoodBackend {
public:
    ScriptedBackend(double ll, std::vector<double> perts) : ll_(ll), perts_(std::move(perts)) {}
    double log_likelihood(std::string_view) const override { return ll_; }
    PerturbationSet sample_perturbations(std::string_view, std::size_t, std::uint64_t) const override {
        return {std::vector<std::string>(perts_.size()), perts_};
    }

private:
    double ll_;
    std::vector<double> perts_;
};

// Adds a constant to every log-likelihood of the wrapped backend.
class ShiftedBackend final : public LikelihoodBackend {
public:
    ShiftedBackend(const LikelihoodBackend& inner, double shift) : inner_(inner), shift_(shift) {}
    double log_likelihood(std::string_view code) const override { return inner_.log_likelihood(code) + shift_; }
    PerturbationSet sample_perturbations(std::string_view code, std::size_t k, std::uint64_t seed) const override {
        auto p = inner_.sample_perturbations(code, k, seed);
        for (auto& v : p.logliks) v += shift_;
        return p;
    }

private:
    const LikelihoodBackend& inner_;
    double shift_;
};

class FailingBackend final : public LikelihoodBackend {
public:
    double log_likelihood(std::string_view) const override { throw std::runtime_error("server unreachable"); }
    PerturbationSet sample_perturbations(std::string_view, std::size_t, std::uint64_t) const override { return {}; }
};

NgramBackend trained_ngram(std::uint64_t seed = 3) {
    synth::CorpusSpec spec;
    spec.seed = seed;
    std::vector<std::string> code;
    for (const auto& s : synth::make_corpus(120, spec)) code.push_back(s.code);
    NgramBackend b(4, 0.01);
    b.train(code);
    return b;
}

}  // namespace

TEST_SUITE("zeroshot") {

TEST_CASE("curvature statistic examples") {
    CHECK(curvature_score("x", ScriptedBackend(-10, {-12, -14})) == 3.0);
    CHECK(curvature_score("x", ScriptedBackend(-5, {-5, -5, -5})) == 0.0);
    // Zero spread: the deviation is divided by the 1e-8 floor.
    CHECK(curvature_score("x", ScriptedBackend(-4, {-5, -5})) == doctest::Approx(1e8));
    CHECK_THROWS_WITH(curvature_score("", ScriptedBackend(0, {1, 2})), doctest::Contains("empty input"));
    CHECK_THROWS(curvature_score("x", ScriptedBackend(0, {1, 2}), 1));
    CHECK_THROWS_WITH(curvature_score("x", FailingBackend()),
                      doctest::Contains("likelihood backend failed: server unreachable"));
}

TEST_CASE("curvature is invariant to shifting every log-likelihood") {
    const auto ngram = trained_ngram();
    synth::CorpusSpec spec;
    spec.seed = 4;
    const auto samples = synth::make_corpus(12, spec);
    for (double shift : {-1000.0, -3.5, 0.25, 777.0}) {
        const ShiftedBackend shifted(ngram, shift);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const double a = curvature_score(samples[i].code, ngram, 32, i);
            const double b = curvature_score(samples[i].code, shifted, 32, i);
            CHECK(std::abs(a - b) <= 1e-9);
        }
    }
}

TEST_CASE("n-gram conditionals are normalized") {
    const auto ngram = trained_ngram();
    const std::string probe = "for (int i = 0; i < n; ++i) {\n  total += v[i];\n}\n";
    for (std::size_t pos = 0; pos < probe.size(); pos += 3) {
        const auto ctx = ngram.context_at(probe, pos);
        double sum = 0;
        for (int b = 0; b < 256; ++b) sum += ngram.probability(ctx, static_cast<unsigned char>(b));
        CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
    // Unseen context: uniform.
    CHECK(ngram.probability(0xFFFFFF, 'a') == doctest::Approx(1.0 / 256));
    CHECK(std::isfinite(ngram.log_likelihood("\x01\x02\x03 unseen bytes")));
}

TEST_CASE("n-gram log-likelihood is the sum of conditionals") {
    NgramBackend b(2, 0.5);
    b.train(std::vector<std::string>{"abab", "abba"});
    const std::string s = "abx";
    double ll = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        ll += std::log(b.probability(b.context_at(s, i), static_cast<unsigned char>(s[i])));
    }
    CHECK(b.log_likelihood(s) == doctest::Approx(ll).epsilon(1e-12));
    // Context 'a' is followed by 'b' three times out of three.
    CHECK(b.probability(b.context_at("ab", 1), 'b') == doctest::Approx((3 + 0.5) / (3 + 0.5 * 256)));
    CHECK_THROWS(NgramBackend(5, 0.01));
    CHECK_THROWS(NgramBackend(4, 0.0));
}

TEST_CASE("n-gram model serializes") {
    const auto a = trained_ngram();
    const auto b = NgramBackend::from_json(a.to_json());
    CHECK(b.corpus_digest() == a.corpus_digest());
    CHECK(b.log_likelihood("int main() { return 0; }") == a.log_likelihood("int main() { return 0; }"));
}

TEST_CASE("perturbations resample each byte under the original prefix") {
    const auto ngram = trained_ngram();
    const std::string code = "def f(x):\n    return x + 1\n";
    const auto p1 = ngram.sample_perturbations(code, 8, 42);
    const auto p2 = ngram.sample_perturbations(code, 8, 42);
    const auto p3 = ngram.sample_perturbations(code, 8, 43);
    REQUIRE(p1.sequences.size() == 8);
    CHECK(p1.sequences == p2.sequences);
    CHECK(p1.sequences != p3.sequences);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(p1.sequences[i].size() == code.size());
        double ll = 0;
        for (std::size_t j = 0; j < code.size(); ++j) {
            ll += std::log(ngram.probability(ngram.context_at(code, j), static_cast<unsigned char>(p1.sequences[i][j])));
        }
        CHECK(p1.logliks[i] == doctest::Approx(ll).epsilon(1e-12));
    }
}

TEST_CASE("scores do not depend on order or threads") {
    const auto ngram = trained_ngram();
    synth::CorpusSpec spec;
    spec.seed = 5;
    auto samples = synth::make_corpus(30, spec);
    const auto a = curvature_scores(samples, ngram, 16, 9, Exec::parallel);
    const auto b = curvature_scores(samples, ngram, 16, 9, Exec::serial);
    CHECK(a == b);
    std::reverse(samples.begin(), samples.end());
    auto c = curvature_scores(samples, ngram, 16, 9);
    std::reverse(c.begin(), c.end());
    CHECK(a == c);
}

TEST_CASE("threshold fitting") {
    SUBCASE("two points") {
        const auto fit = fit_threshold(std::vector<double>{0, 1}, {false, true});
        CHECK(fit.threshold == 0.5);
        CHECK(fit.macro_f1 == 1.0);
        CHECK_FALSE(fit.inverted_polarity);
    }
    SUBCASE("identical scores") {
        const auto fit = fit_threshold(std::vector<double>{2, 2, 2}, {true, true, false});
        CHECK(fit.threshold == 2.0);
        // Everything is called llm, the majority class: F1 {0, 0.8}.
        CHECK(fit.macro_f1 == doctest::Approx(0.4));
    }
    SUBCASE("perfectly inverted scores") {
        const auto fit = fit_threshold(std::vector<double>{0, 1, 2, 3}, {true, true, false, false});
        CHECK(fit.inverted_polarity);
        CHECK(fit.inverted_macro_f1 == 1.0);
        CHECK(fit.macro_f1 <= 0.5);
    }
    SUBCASE("ties go to the smaller threshold") {
        // t = 1.5 and t = 2.5 both misclassify one sample.
        const auto fit = fit_threshold(std::vector<double>{1, 2, 3}, {false, true, false});
        CHECK(fit.threshold == 1.5);
    }
    SUBCASE("single class is an error") {
        CHECK_THROWS(fit_threshold(std::vector<double>{1, 2}, {true, true}));
    }
}

TEST_CASE("threshold sweep agrees with brute force") {
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 4 + uniform_index(rng, 20);
        std::vector<double> s(n);
        std::vector<bool> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = static_cast<double>(uniform_index(rng, 8));
            y[i] = i < 2 ? i == 0 : uniform_index(rng, 2) == 1;
        }
        auto macro = [&](double t) {
            double tp = 0, fp = 0, fn = 0, tn = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const bool p = s[i] >= t;
                tp += p && y[i], fp += p && !y[i], fn += !p && y[i], tn += !p && !y[i];
            }
            auto f = [](double a, double b, double c) { return 2 * a + b + c == 0 ? 0.0 : 2 * a / (2 * a + b + c); };
            return (f(tp, fp, fn) + f(tn, fn, fp)) / 2;
        };
        // Candidates never exceed the largest score, so "all human" is not
        // on the menu.
        double best = -1;
        const double top = *std::max_element(s.begin(), s.end());
        for (double t = -0.5; t <= top; t += 0.5) best = std::max(best, macro(t));
        const auto fit = fit_threshold(s, y);
        CHECK(fit.macro_f1 == doctest::Approx(best));
        CHECK(macro(fit.threshold) == doctest::Approx(best));
    }
}

TEST_CASE("classification boundary and monotonicity") {
    CHECK(classify_zero_shot_score(1.0, 1.0));
    CHECK_FALSE(classify_zero_shot_score(std::nextafter(1.0, 0.0), 1.0));
    const ScriptedBackend b(-10, {-12, -14});  // score 3
    CHECK(classify_zero_shot("x", b, 3.0) == Label::llm);
    CHECK(classify_zero_shot("x", b, 3.0 + 1e-12) == Label::human);
    for (double t = -5; t < 5; t += 0.25) {
        if (!classify_zero_shot_score(0.7, t)) CHECK_FALSE(classify_zero_shot_score(0.7, t + 0.25));
    }
}

TEST_CASE("human-trained n-gram ranks held-out human code above llm code") {
    // Trained on human fixture code only, the model finds human code more
    // typical under perturbation than generator code.
    const auto corpus = ingest(std::string(CODETECT_TEST_DATA) + "/corpus.jsonl");
    std::vector<std::string> human_train;
    std::vector<CodeSample> human_eval, llm_eval;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& s = corpus[i];
        if (s.label == Label::human && i % 2 == 0) {
            human_train.push_back(s.code);
        } else if (i % 4 == 1) {
            (s.label == Label::human ? human_eval : llm_eval).push_back(s);
        }
    }
    NgramBackend b(4, 0.01);
    b.train(human_train);
    const auto hs = curvature_scores(human_eval, b, 16, 1);
    const auto ls = curvature_scores(llm_eval, b, 16, 1);
    const double mh = std::accumulate(hs.begin(), hs.end(), 0.0) / static_cast<double>(hs.size());
    const double ml = std::accumulate(ls.begin(), ls.end(), 0.0) / static_cast<double>(ls.size());
    CHECK(mh > ml);
}

TEST_CASE("adapter protocol round trip matches in-process scoring") {
    const auto ngram = trained_ngram();
    synth::CorpusSpec spec;
    spec.seed = 6;
    const auto samples = synth::make_corpus(20, spec);
    std::istringstream requests(adapter_request_jsonl(samples));
    std::ostringstream responses;
    serve_adapter(requests, responses, ngram, 16, 77);
    const auto records = parse_adapter_response(responses.str());
    REQUIRE(records.size() == samples.size());
    const PrecomputedBackend replay(samples, records);
    CHECK(curvature_scores(samples, replay, 16, 77) == curvature_scores(samples, ngram, 16, 77));

    const std::vector<AdapterRecord> partial(records.begin(), records.begin() + 5);
    CHECK_THROWS_WITH(PrecomputedBackend(samples, partial), doctest::Contains("adapter returned no result for id"));
    CHECK_THROWS(parse_adapter_response("{\"id\":\"a\",\"loglik\":\"high\"}\n"));
}

TEST_CASE("adapter process failures surface") {
    synth::CorpusSpec spec;
    const auto samples = synth::make_corpus(3, spec);
    CHECK_THROWS_WITH(run_adapter_process("false", samples), doctest::Contains("exit"));
    const std::string echo = "printf '{\"id\":\"x\",\"loglik\":-1,\"perturbation_logliks\":[-2,-3]}\\n'";
    const auto recs = run_adapter_process(echo, samples);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].perturbation_logliks == std::vector<double>{-2, -3});
}

}
