#include "codetect/common.hpp"
#include "codetect/stylometry/ast_summary.hpp"
#include "codetect/stylometry/features.hpp"
#include "codetect/stylometry/language_rules.hpp"
#include "codetect/stylometry/matrix.hpp"
#include "codetect/stylometry/tree_sitter_backend.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>

using namespace codetect;

namespace {

CodeSample make(std::string code, Language lang) {
    CodeSample s;
    s.id = content_id(code);
    s.code = std::move(code);
    s.language = lang;
    return s;
}

}  // namespace

TEST_SUITE("stylometry") {

TEST_CASE("features match an independent tree walk on the fixtures") {
    const auto files = oracle::fixture_files(CODETECT_TEST_DATA);
    REQUIRE(files.size() == 50);
    for (const auto& path : files) {
        CAPTURE(path.filename().string());
        const Language lang = oracle::language_for(path);
        const std::string code = read_file(path.string());
        const FeatureVector fv = extract_features(make(code, lang));
        REQUIRE(fv.ast_available);
        const auto walk = oracle::walk_tree(code, lang);

        CHECK(*fv.get("ast_depth") == static_cast<double>(walk.max_depth));
        CHECK(*fv.get("assignment_count") == static_cast<double>(walk.assignments));
        const double loc = static_cast<double>(count_code_lines(code));
        std::size_t densities = 0;
        for (const auto& [name, value] : fv.values) {
            if (!name.starts_with(feature::node_density_prefix)) continue;
            ++densities;
            const auto type = name.substr(feature::node_density_prefix.size());
            REQUIRE(walk.counts.count(type) == 1);
            CHECK(*value * loc == doctest::Approx(static_cast<double>(walk.counts.at(type))).epsilon(1e-12));
            CHECK(*value == static_cast<double>(walk.counts.at(type)) / loc);
        }
        CHECK(densities == walk.counts.size());

        CHECK(std::abs(*fv.get("whitespace_ratio") - oracle::whitespace_ratio(code)) <= 1e-12);
        CHECK(std::abs(*fv.get("avg_line_length") - oracle::avg_line_length(code)) <= 1e-12);
    }
}

TEST_CASE("text metrics by hand") {
    CHECK(whitespace_ratio("ab \n\tc") == 0.5);
    CHECK(*avg_line_length("ab \n\tc") == 2.5);
    CHECK(*avg_line_length("abcd\n\n   \nxy\n") == 3.0);
    CHECK(whitespace_ratio("h\xc3\xa9 ") == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK_FALSE(avg_line_length("\n  \n").has_value());
    CHECK(whitespace_ratio("") == 0.0);
}

TEST_CASE("hand-counted Halstead and complexity") {
    SUBCASE("assignment") {
        const auto s = parse("x = a + b\n", Language::python);
        // operators {=, +}; operands {x, a, b}
        CHECK(s.halstead.total_operators == 2);
        CHECK(s.halstead.distinct_operators == 2);
        CHECK(s.halstead.total_operands == 3);
        CHECK(s.halstead.distinct_operands == 3);
        CHECK(s.cyclomatic_complexity == 1);
        const double v = 5 * std::log2(5.0);
        CHECK(std::abs(s.halstead.volume() - v) < 1e-12);
        CHECK(std::abs(maintainability_index(s) - (171 - 5.2 * std::log(v) - 0.23)) < 1e-9);
    }
    SUBCASE("branch") {
        const auto s = parse("if a > 1:\n    y = 2\n", Language::python);
        // operators {if, >, =}; operands {a, 1, y, 2}
        CHECK(s.halstead.total_operators == 3);
        CHECK(s.halstead.total_operands == 4);
        CHECK(s.cyclomatic_complexity == 2);
        CHECK(s.lines_of_code == 2);
        CHECK(s.max_depth == 5);
        CHECK(s.assignment_count == 1);
        REQUIRE(s.decision_condition_lengths.size() == 1);
        CHECK(s.decision_condition_lengths[0] == 5);
        const double v = 7 * std::log2(7.0);
        CHECK(std::abs(maintainability_index(s) - (171 - 5.2 * std::log(v) - 0.46 - 16.2 * std::log(2.0))) < 1e-9);
    }
    SUBCASE("string literal is one operand") {
        const auto s = parse("class A { String s = \"a b\"; }\n", Language::java);
        // operators {class, =}; operands {A, String, s, "a b"}
        CHECK(s.halstead.total_operators == 2);
        CHECK(s.halstead.total_operands == 4);
        CHECK(s.halstead.distinct_operands == 4);
        CHECK(s.assignment_count == 1);
    }
    SUBCASE("boolean operators add paths") {
        const auto s = parse("int f(int a, int b) {\n  if (a && b || a) return 1;\n  while (b) b--;\n  return 0;\n}\n",
                             Language::cpp);
        CHECK(s.cyclomatic_complexity == 5);
        REQUIRE(s.function_spans.size() == 1);
        CHECK(s.function_spans[0] == std::pair<std::size_t, std::size_t>{1, 5});
        std::vector<std::size_t> ids = s.identifier_lengths;
        std::sort(ids.begin(), ids.end());
        CHECK(ids == std::vector<std::size_t>{1, 1});
    }
}

TEST_CASE("maintainability index formula") {
    CHECK(std::abs(maintainability_index(100.0, 3, 20) - (171 - 5.2 * std::log(100.0) - 0.69 - 16.2 * std::log(20.0))) <
          1e-9);
    for (double v : {10.0, 250.0, 1000.0}) {
        for (std::size_t loc : {5, 40}) {
            const double a = maintainability_index(v, 4, loc);
            const double b = maintainability_index(v, 14, loc);
            CHECK(std::abs((a - b) - 2.3) < 1e-9);
        }
    }
    CHECK(maintainability_index(0.0, 1, 1) == maintainability_index(1.0, 1, 1));
    CHECK(maintainability_index(1e300, 1000, 100000) == 0.0);
}

TEST_CASE("feature set per language") {
    const std::map<Language, std::string> snippets = {
        {Language::csharp, "class A {\n  int F(int x) {\n    if (x > 0) { return x; }\n    return -x;\n  }\n}\n"},
        {Language::go, "package main\nfunc f(x int) int {\n\tif x > 0 {\n\t\treturn x\n\t}\n\treturn -x\n}\n"},
        {Language::javascript, "function f(x) {\n  if (x > 0) { return x; }\n  return -x;\n}\n"},
        {Language::php, "<?php\nfunction f($x) {\n  if ($x > 0) { return $x; }\n  return -$x;\n}\n"},
        {Language::ruby, "def f(x)\n  if x > 0\n    return x\n  end\n  -x\nend\n"},
    };
    for (const auto& [lang, code] : snippets) {
        CAPTURE(to_string(lang));
        const auto s = parse(code, lang);
        CHECK(s.cyclomatic_complexity == 2);
        CHECK(s.function_spans.size() == 1);
        REQUIRE(s.decision_condition_lengths.size() == 1);
        CHECK(s.decision_condition_lengths[0] == (lang == Language::php ? 6 : 5));
        const auto fv = extract_features(make(code, lang));
        CHECK(fv.ast_available);
        CHECK(*fv.get("function_density") == doctest::Approx(1.0 / static_cast<double>(count_code_lines(code))));
    }
}

TEST_CASE("unparsable code keeps only text features") {
    // An empty Python program parses; an unsupported language does not.
    auto fv = extract_features(make("x y z", Language::other));
    CHECK_FALSE(fv.ast_available);
    CHECK(fv.get("avg_line_length").has_value());
    CHECK_FALSE(fv.get("ast_depth").has_value());
    CHECK_FALSE(fv.get("node_density/python/identifier").has_value());
    CHECK_THROWS_AS(parse("x", Language::other), ParseError);
}

TEST_CASE("recovered trees count as parsed when some top-level construct survives") {
    CHECK_THROWS_WITH_AS(parse(")))(((", Language::python), doctest::Contains("unparsable"), ParseError);
    CHECK_THROWS_AS(parse("}", Language::java), ParseError);
    CHECK_FALSE(extract_features(make("return )", Language::python)).ast_available);
    // One bad line among good ones keeps the tree.
    CHECK(extract_features(make("x = 1\n)\ny = 2\n", Language::python)).ast_available);
    CHECK_NOTHROW(parse("", Language::python));
}

TEST_CASE("densities of absent node types are zero, not missing") {
    const auto fv = extract_features(make("x = 1\n", Language::python));
    CHECK(*fv.get("node_density/python/while_statement") == 0.0);
    CHECK(*fv.get("node_density/python/assignment") == 1.0);
}

TEST_CASE("extraction is identical serially and in parallel") {
    synth::CorpusSpec spec;
    spec.seed = 8;
    const auto corpus = synth::make_corpus(120, spec);
    const auto a = extract_all(corpus, Exec::serial);
    const auto b = extract_all(corpus, Exec::parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].values == b[i].values);
}

TEST_CASE("schema fitting: sparsity filter and medians") {
    std::vector<FeatureVector> v(5);
    const std::vector<std::optional<double>> a{1, 2, 3, 4, std::nullopt};  // 20% missing: kept
    const std::vector<std::optional<double>> b{1, std::nullopt, 3, std::nullopt, 5};  // 40%: dropped
    const std::vector<std::optional<double>> c{7, 1, 5, 3, 9};
    for (std::size_t i = 0; i < 5; ++i) {
        v[i].sample_id = "r" + std::to_string(i);
        v[i].values["a"] = a[i];
        v[i].values["b"] = b[i];
        v[i].values["c"] = c[i];
    }
    const auto schema = fit_schema(v, 0.2);
    CHECK(schema.names == std::vector<std::string>{"a", "c"});
    CHECK(schema.dropped == std::vector<std::string>{"b"});
    CHECK(schema.imputation == std::vector<double>{2.5, 5.0});

    const std::vector<std::string> labels(5, "human");
    const auto m = apply_schema(schema, v, labels);
    CHECK(m.rows() == 5);
    CHECK(m.at(4, 0) == 2.5);
    CHECK(m.imputed(4, 0));
    CHECK_FALSE(m.imputed(3, 0));
    CHECK(m.ids[2] == "r2");

    CHECK(fit_schema(v, 0.4).names.size() == 3);
    for (auto& fv : v) fv.values.erase("c"), fv.values["a"] = std::nullopt;
    CHECK_THROWS_WITH(fit_schema(v, 0.2), doctest::Contains("all features sparse"));
}

TEST_CASE("schema hash and sidecar round trip") {
    const std::vector<std::string> names{"ast_depth", "avg_line_length"};
    // python: hashlib.sha256(b"ast_depth\navg_line_length\n")
    CHECK(schema_hash(names) == "f32c11afa3637c9590fc80d081e20b2f56f2d1c76e477bcc25e8c934cb70e061");
    FeatureSchema s;
    s.names = names;
    s.imputation = {3.0, 20.5};
    s.dropped = {"zzz"};
    const auto back = FeatureSchema::from_json(s.to_json("digest"));
    CHECK(back.names == s.names);
    CHECK(back.imputation == s.imputation);
    CHECK(back.dropped == s.dropped);
    CHECK(back.hash() == s.hash());
    auto text = s.to_json();
    text.replace(text.find("ast_depth"), 9, "ast_width");
    CHECK_THROWS(FeatureSchema::from_json(text));
}

TEST_CASE("matrix csv round trip") {
    synth::CorpusSpec spec;
    spec.seed = 9;
    const auto corpus = synth::make_corpus(60, spec);
    const auto vectors = extract_all(corpus);
    std::vector<std::string> labels;
    for (const auto& s : corpus) labels.emplace_back(to_string(s.label));
    const auto built = build_matrix(vectors, labels, std::vector<bool>(corpus.size(), true));
    const auto back = matrix_from_csv(matrix_to_csv(built.matrix));
    REQUIRE(back.rows() == built.matrix.rows());
    CHECK(back.feature_names() == built.matrix.feature_names());
    CHECK(back.schema_hash() == built.schema.hash());
    CHECK(back.labels == built.matrix.labels);
    CHECK(back.ids == built.matrix.ids);
    for (std::size_t r = 0; r < back.rows(); ++r) {
        for (std::size_t c = 0; c < back.cols(); ++c) CHECK(back.at(r, c) == built.matrix.at(r, c));
    }
}

TEST_CASE("schema fit uses only the fit mask") {
    std::vector<FeatureVector> v(4);
    for (std::size_t i = 0; i < 4; ++i) v[i].values["x"] = static_cast<double>(i * 10);
    v[3].values["x"] = std::nullopt;
    const std::vector<std::string> labels(4, "llm");
    const auto built = build_matrix(v, labels, {true, true, false, false});
    CHECK(built.schema.imputation == std::vector<double>{5.0});
    CHECK(built.matrix.at(3, 0) == 5.0);
    CHECK(built.matrix.at(2, 0) == 20.0);
}


TEST_CASE("renaming identifiers leaves structure alone") {
    const std::string longer =
        "def accumulate_values(input_list, scale_factor):\n"
        "    running_total = 0\n"
        "    for element in input_list:\n"
        "        running_total += element * scale_factor\n"
        "    return running_total\n";
    const std::string shorter =
        "def a(b, c):\n"
        "    d = 0\n"
        "    for e in b:\n"
        "        d += e * c\n"
        "    return d\n";
    const auto x = extract_features(make(longer, Language::python));
    const auto y = extract_features(make(shorter, Language::python));
    CHECK(*x.get("ast_depth") == *y.get("ast_depth"));
    CHECK(*x.get("assignment_count") == *y.get("assignment_count"));
    CHECK(*x.get("avg_var_name_length") > *y.get("avg_var_name_length"));
    CHECK(*y.get("avg_var_name_length") == 1.0);
    CHECK(*x.get("node_density/python/identifier") == *y.get("node_density/python/identifier"));
}

}
