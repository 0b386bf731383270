// Regenerates the checked-in fixture data under tests/data.
//   gen_fixtures <data dir>

#include "synthetic.hpp"

#include "codetect/common.hpp"
#include "codetect/corpus/ingest.hpp"

#include <filesystem>
#include <iostream>

using namespace codetect;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_fixtures <data dir>\n";
        return 2;
    }
    const std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir / "fixtures");

    synth::CorpusSpec spec;
    spec.seed = 20240611;
    const auto corpus = synth::make_corpus(600, spec);
    write_jsonl((dir / "corpus.jsonl").string(), corpus);

    const auto hybrids = synth::make_hybrids(240, spec);
    write_jsonl((dir / "hybrids.jsonl").string(), hybrids);

    // 50 single-file fixtures spread over languages and authors.
    for (std::size_t i = 0; i < 50; ++i) {
        const CodeSample& s = corpus[(i * 12 + i / 5) % corpus.size()];
        const char* ext = s.language.value == Language::python ? ".py" : s.language.value == Language::java ? ".java" : ".cpp";
        char name[32];
        std::snprintf(name, sizeof name, "f%02zu", i);
        write_file((dir / "fixtures" / (std::string(name) + ext)).string(), s.code);
    }
    std::cout << "wrote " << corpus.size() << " samples, " << hybrids.size() << " hybrids, 50 fixtures\n";
    return 0;
}
