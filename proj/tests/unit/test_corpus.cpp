#include "codetect/corpus/comments.hpp"
#include "codetect/corpus/ingest.hpp"
#include "codetect/corpus/qa.hpp"
#include "codetect/corpus/splits.hpp"
#include "codetect/random.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

using namespace codetect;

namespace {

CodeSample sample(std::string code, Language lang = Language::python, std::size_t n = 0) {
    CodeSample s;
    s.code = std::move(code);
    s.language = lang;
    s.id = "s" + std::to_string(n);
    return s;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("ingest reads records in order and names bad lines") {
    std::istringstream in(
        "{\"code\":\"a=1\",\"language\":\"python\",\"label\":\"human\"}\n"
        "\n"
        "{\"code\":\"b=2\",\"language\":\"Python\",\"label\":\"llm\",\"generator\":\"GPT-4o\",\"source\":\"mbpp\"}\n"
        "{\"code\":\"c=3\",\"language\":\"kotlin\",\"label\":\"human\",\"source\":\"rosetta\"}\n");
    const auto s = ingest_jsonl(in);
    REQUIRE(s.size() == 3);
    CHECK(s[0].code == "a=1");
    CHECK(s[1].generator->value == Generator::gpt4o);
    CHECK(s[1].source.value == Source::mbpp);
    CHECK(s[2].language.value == Language::other);
    CHECK(s[2].language.tag == "kotlin");
    CHECK(name_of(s[2].source) == "rosetta");
    CHECK(s[0].id == content_id("a=1"));
    CHECK(s[0].id == sha256_hex("a=1").substr(0, 16));

    std::istringstream bad("{\"code\":\"a\",\"language\":\"python\",\"label\":\"human\"}\n"
                           "{\"code\":\"b\",\"language\":\"python\",\"label\":\"llm\"}\n");
    try {
        ingest_jsonl(bad);
        FAIL("expected an error");
    } catch (const IngestError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("generator required for llm") != std::string::npos);
    }
    std::istringstream missing("{\"language\":\"python\",\"label\":\"human\"}\n");
    CHECK_THROWS_WITH(ingest_jsonl(missing), doctest::Contains("missing field 'code'"));
    std::istringstream malformed("{\"code\": \n");
    CHECK_THROWS_WITH(ingest_jsonl(malformed), doctest::Contains("line 1"));
}

TEST_CASE("identical bodies get identical ids") {
    std::istringstream in("{\"code\":\"x\",\"language\":\"go\",\"label\":\"human\"}\n"
                          "{\"code\":\"x\",\"language\":\"go\",\"label\":\"human\"}\n");
    const auto s = ingest_jsonl(in);
    CHECK(s[0].id == s[1].id);
}

TEST_CASE("jsonl round trip") {
    synth::CorpusSpec spec;
    spec.seed = 5;
    auto corpus = synth::make_corpus(40, spec);
    auto hybrids = synth::make_hybrids(10, spec);
    corpus.insert(corpus.end(), hybrids.begin(), hybrids.end());
    corpus[0].split = Split::val;
    std::string text;
    for (const auto& s : corpus) text += to_jsonl_line(s) + "\n";
    std::istringstream in(text);
    CHECK(ingest_jsonl(in) == corpus);
}

TEST_CASE("strip_comments examples") {
    CHECK(strip_comments("x = 1  # set x", Language::python) == "x = 1");
    CHECK(strip_comments("\"\"\"doc\"\"\"\ndef f(): pass", Language::python) == "def f(): pass");
    CHECK(strip_comments("/* a */ int x; // b", Language::java) == "int x;");
    CHECK(strip_comments("int y = a /* mid */ + b;", Language::cpp) == "int y = a + b;");
    CHECK(strip_comments("s = \"a // b\"; // c", Language::cpp) == "s = \"a // b\";");
    CHECK(strip_comments("s = '# not'\n", Language::python) == "s = '# not'\n");
    CHECK(strip_comments("x = 1\n\n# gone\ny = 2", Language::python) == "x = 1\n\ny = 2");
    CHECK_THROWS_WITH(strip_comments("x", Language::other), doctest::Contains("no comment grammar"));
}

TEST_CASE("strip_comments is idempotent on a fuzz corpus") {
    Rng rng(2024);
    std::size_t changed = 0;
    for (int i = 0; i < 500; ++i) {
        const Language lang = std::array{Language::python, Language::java, Language::cpp}[i % 3];
        const std::string code = oracle::fuzz_snippet(lang, rng);
        const std::string once = strip_comments(code, lang);
        const std::string twice = strip_comments(once, lang);
        CHECK_MESSAGE(once == twice, "language ", to_string(lang), " input:\n", code);
        changed += once != code;
    }
    CHECK(changed > 250);
}

TEST_CASE("count_tokens splits punctuation") {
    CHECK(count_tokens("") == 0);
    CHECK(count_tokens("x = 1") == 3);
    CHECK(count_tokens("foo(bar, 1)") == 6);
    CHECK(count_tokens("a+=b") == 4);
    // Hand count: class(1) Box(2) {(3) / int(4) v(5) ;(6) / int(7) get(8) ((9) )(10) {(11) return(12) v(13) ;(14)
    // }(15) / void(16) set(17) ((18) int(19) x(20) )(21) {(22) / v(23) =(24) x(25) ;(26) / }(27) / boolean(28)
    // big(29) ((30) )(31) {(32) / if(33) ((34) v(35) >(36) 10(37) )(38) {(39) return(40) true(41) ;(42) }(43)
    // / return(44) false(45) ;(46) / }(47) / }(48)
    const std::string java =
        "class Box {\n"
        "    int v;\n"
        "    int get() { return v; }\n"
        "    void set(int x) {\n"
        "        v = x;\n"
        "    }\n"
        "    boolean big() {\n"
        "        if (v > 10) { return true; }\n"
        "        return false;\n"
        "    }\n"
        "}\n"
        "\n";
    CHECK(count_tokens(java) == 48);
}

TEST_CASE("nearest rank matches a brute-force order statistic") {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::size_t> xs(1 + uniform_index(rng, 40));
        for (auto& x : xs) x = uniform_index(rng, 15);
        for (int p : {0, 1, 5, 10, 25, 49, 50, 51, 75, 95, 99, 100}) {
            CHECK(nearest_rank(xs, p) == oracle::nearest_rank(xs, p));
        }
    }
    std::vector<std::size_t> one_to_twenty(20);
    for (std::size_t i = 0; i < 20; ++i) one_to_twenty[i] = i + 1;
    CHECK(nearest_rank(one_to_twenty, 5) == 1);
    CHECK(nearest_rank(one_to_twenty, 95) == 19);
    CHECK_THROWS(nearest_rank(std::vector<std::size_t>{}, 5));
}

TEST_CASE("length filter on counts 1..20 removes only the longest") {
    std::vector<CodeSample> samples;
    for (std::size_t n = 1; n <= 20; ++n) {
        std::string code;
        for (std::size_t k = 0; k < n; ++k) code += "a ";
        samples.push_back(sample(code, Language::python, n));
    }
    QaConfig cfg;
    auto r = filter_by_length(samples, cfg);
    REQUIRE(r.kept.size() == 19);
    CHECK(r.kept.back().id == "s19");
    CHECK(r.cuts.at("python").low == 1);
    CHECK(r.cuts.at("python").high == 19);

    cfg.low_percentile = 0;
    cfg.high_percentile = 100;
    CHECK(filter_by_length(samples, cfg).kept.size() == 20);

    std::vector<CodeSample> same(7, sample("a b c"));
    CHECK(filter_by_length(same, QaConfig{}).kept.size() == 7);
    CHECK_THROWS_WITH(filter_by_length(std::vector<CodeSample>{}, QaConfig{}), doctest::Contains("empty corpus"));
}

TEST_CASE("length filter keeps boundary values and preserves order") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<CodeSample> samples;
        for (std::size_t i = 0; i < 60; ++i) {
            const Language lang = i % 2 ? Language::java : Language::python;
            std::string code;
            const auto n = 1 + uniform_index(rng, 30);
            for (std::size_t k = 0; k < n; ++k) code += "t ";
            samples.push_back(sample(code, lang, i));
        }
        const auto r = filter_by_length(samples, QaConfig{});
        CHECK(r.kept.size() <= samples.size());
        std::size_t prev = 0;
        for (const auto& s : r.kept) {
            const auto idx = static_cast<std::size_t>(std::stoul(s.id.substr(1)));
            CHECK(idx >= prev);
            prev = idx;
        }
        for (const auto& s : samples) {
            const auto& cut = r.cuts.at(name_of(s.language));
            const auto n = count_tokens(s.code);
            const bool kept = std::any_of(r.kept.begin(), r.kept.end(), [&](const auto& k) { return k.id == s.id; });
            CHECK(kept == (n >= cut.low && n <= cut.high));
        }
    }
}

TEST_CASE("deduplicate normalization cases") {
    const auto a = sample("x = 1\ny = 2\n", Language::python, 0);
    const auto b = sample("x = 1\ny = 2\n\n\n", Language::python, 1);
    const auto c = sample("x = 1   \n\n\n\ny = 2  # c\n", Language::python, 2);
    const auto d = sample("x = 1\nz = 2\n", Language::python, 3);
    const std::vector<CodeSample> in{a, a, b, c, d};
    const auto out = deduplicate(in);
    REQUIRE(out.size() == 3);
    CHECK(out[0].id == "s0");
    CHECK(out[1].id == "s2");  // the blank-line run survives as one blank line
    CHECK(out[2].id == "s3");
}

TEST_CASE("deduplicate output has pairwise distinct keys") {
    synth::CorpusSpec spec;
    spec.seed = 17;
    auto corpus = synth::make_corpus(300, spec);
    const auto copies = corpus;
    corpus.insert(corpus.end(), copies.begin(), copies.begin() + 50);
    const auto out = deduplicate(corpus);
    std::set<std::string> keys;
    for (const auto& s : out) CHECK(keys.insert(dedup_key(s)).second);
    CHECK(out.size() <= 300);
    CHECK(deduplicate(corpus, Exec::serial) == out);
}

TEST_CASE("run_qa report counts") {
    std::vector<CodeSample> in;
    in.push_back(sample("x = 1  # c\ny = 2\n", Language::python, 0));
    in.push_back(sample("x = 1\ny = 2\n", Language::python, 1));
    in.push_back(sample("# only a comment\n", Language::python, 2));
    in.push_back(sample("int a;", Language::other, 3));
    in.push_back(sample("z = 3\n", Language::python, 4));
    QaConfig cfg;
    cfg.low_percentile = 0;
    cfg.high_percentile = 100;
    const auto r = run_qa(in, cfg);
    CHECK(r.report.ingested == 5);
    CHECK(r.report.comment_stripped == 2);
    CHECK(r.report.dropped_unparsable == 2);
    CHECK(r.report.deduplicated == 1);
    CHECK(r.report.retained == 2);
    CHECK(r.samples[0].code == "x = 1\ny = 2\n");
    CHECK(run_qa(in, cfg, Exec::serial).samples == r.samples);

    QaConfig bad;
    bad.low_percentile = 60;
    CHECK_THROWS(bad.validate());
    bad.low_percentile = 50;
    bad.high_percentile = 50;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("split counts use largest remainders") {
    CHECK(split_counts(10, {0.8, 0.1, 0.1}) == std::array<std::size_t, 3>{8, 1, 1});
    CHECK(split_counts(200, {0.8, 0.1, 0.1}) == std::array<std::size_t, 3>{160, 20, 20});
    CHECK(split_counts(5, {0.8, 0.1, 0.1}) == std::array<std::size_t, 3>{4, 1, 0});
    CHECK(split_counts(3, {0.8, 0.1, 0.1}) == std::array<std::size_t, 3>{3, 0, 0});
}

TEST_CASE("split assignment per class is exact on divisible strata") {
    std::vector<CodeSample> in;
    for (std::size_t i = 0; i < 200; ++i) {
        auto s = sample("x" + std::to_string(i), Language::python, i);
        s.source = Source::github;
        if (i >= 100) {
            s.label = Label::llm;
            s.generator = Generator::gpt4o;
        }
        in.push_back(s);
    }
    SplitPlan plan;
    plan.seed = 3;
    const auto r = assign_splits(in, plan);
    std::map<std::pair<Label, Split>, int> counts;
    for (const auto& s : r.samples) ++counts[{s.label, *s.split}];
    for (auto l : {Label::human, Label::llm}) {
        CHECK(counts[{l, Split::train}] == 80);
        CHECK(counts[{l, Split::val}] == 10);
        CHECK(counts[{l, Split::test}] == 10);
    }
    CHECK(assign_splits(in, plan).samples == r.samples);
    plan.seed = 4;
    CHECK(assign_splits(in, plan).samples != r.samples);
}

TEST_CASE("small strata go to train whole") {
    std::vector<CodeSample> in{sample("a", Language::python, 0), sample("b", Language::python, 1)};
    const auto r = assign_splits(in, SplitPlan{});
    for (const auto& s : r.samples) CHECK(*s.split == Split::train);
    REQUIRE(r.small_strata.size() == 1);
    CHECK(r.small_strata[0] == "label=human|language=python|source=other");
}

TEST_CASE("stratification holds within one sample on 10000 samples") {
    const auto corpus = synth::make_metadata_corpus(10000, 42);
    SplitPlan plan;
    plan.seed = 42;
    const auto r = assign_splits(corpus, plan);
    REQUIRE(r.samples.size() == corpus.size());
    std::map<std::string, std::array<std::size_t, 3>> counts;
    for (const auto& s : r.samples) {
        REQUIRE(s.split.has_value());
        ++counts[stratum_key(s, plan.stratify_keys)][static_cast<std::size_t>(*s.split)];
    }
    CHECK(counts.size() > 20);
    for (const auto& [key, c] : counts) {
        const double n = static_cast<double>(c[0] + c[1] + c[2]);
        if (n < 3) continue;
        for (int k = 0; k < 3; ++k) {
            CHECK_MESSAGE(std::abs(static_cast<double>(c[k]) - plan.ratios[k] * n) <= 1.0, key);
        }
    }
}

}
