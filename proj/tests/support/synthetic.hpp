#pragma once

// Synthetic labeled corpora for tests and fixtures. Human and generator
// profiles differ in naming, operator spacing, blank lines, helper
// functions, brace layout and comments, with overlapping distributions.

#include "codetect/corpus/sample.hpp"
#include "codetect/random.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace codetect::synth {

struct Program {
    std::string code;
    std::size_t human_lines = 0;  // non-blank, non-comment lines in human style
    std::size_t code_lines = 0;   // non-blank, non-comment lines
};

/// One program by `author` (nullopt = human). For hybrids, the first
/// `human_blocks` statement blocks (at most all but one) are human-written
/// and the rest follow the generator's style.
Program render_program(Language lang, std::optional<Generator> author, Rng& rng, int human_blocks = -1);

struct CorpusSpec {
    std::size_t per_cell = 20;  // samples per (language, label/generator) cell
    std::vector<Language> languages{Language::python, Language::java, Language::cpp};
    std::vector<Generator> generators{Generator::gpt4o, Generator::codellama, Generator::llama31,
                                      Generator::codeqwen15, Generator::nxcode};
    double human_share = 0.5;  // fraction of human samples per language
    std::uint64_t seed = 1;
};

/// Human and llm samples over the requested languages and generators.
std::vector<CodeSample> make_corpus(std::size_t total, const CorpusSpec& spec);

/// Hybrid samples: human programs completed by a generator, annotated with
/// the fraction of human lines preserved.
std::vector<CodeSample> make_hybrids(std::size_t total, const CorpusSpec& spec);

/// Metadata-only samples (tiny code bodies) for split tests.
std::vector<CodeSample> make_metadata_corpus(std::size_t total, std::uint64_t seed);

}  // namespace codetect::synth
