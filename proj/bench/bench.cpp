// Serial vs parallel timings for the OpenMP kernels, with a result check.

#include "codetect/explain/importance.hpp"
#include "codetect/models/model.hpp"
#include "codetect/parallel.hpp"
#include "codetect/stylometry/features.hpp"
#include "codetect/stylometry/matrix.hpp"
#include "codetect/zeroshot/curvature.hpp"
#include "codetect/zeroshot/ngram.hpp"
#include "datasets.hpp"
#include "synthetic.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>

using namespace codetect;

namespace {

template <typename F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel, bool same) {
    std::printf("%-24s %10.3f %10.3f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
                same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"codetect kernel benchmarks"};
    std::size_t samples = 1200;
    int reps = 3, jobs = 0;
    app.add_option("-n,--samples", samples, "synthetic corpus size");
    app.add_option("-r,--reps", reps, "repetitions; the best time is reported");
    app.add_option("-j,--jobs", jobs, "threads for the parallel runs (0 = all cores)");
    CLI11_PARSE(app, argc, argv);
    set_jobs(jobs);

    synth::CorpusSpec spec;
    spec.seed = 3;
    const auto corpus = synth::make_corpus(samples, spec);
    std::printf("%zu samples, %d thread(s)\n", corpus.size(), max_jobs());
    std::printf("%-24s %10s %10s %9s\n", "kernel", "serial s", "parallel s", "speedup");

    std::vector<FeatureVector> fs, fp;
    const double ts = best_of(reps, [&] { fs = extract_all(corpus, Exec::serial); });
    const double tp = best_of(reps, [&] { fp = extract_all(corpus, Exec::parallel); });
    bool same = fs.size() == fp.size();
    for (std::size_t i = 0; same && i < fs.size(); ++i) same = fs[i].values == fp[i].values;
    row("feature extraction", ts, tp, same);

    std::vector<std::string> labels;
    for (const auto& s : corpus) labels.emplace_back(to_string(s.label));
    const auto built = build_matrix(fp, labels, std::vector<bool>(corpus.size(), true));
    GbdtConfig gcfg;
    gcfg.trees = 200;
    TrainedModel gs, gp;
    const double gts = best_of(reps, [&] { gs = train_gbdt(built.matrix, LabelSpace::binary(), gcfg, Exec::serial); });
    const double gtp = best_of(reps, [&] { gp = train_gbdt(built.matrix, LabelSpace::binary(), gcfg, Exec::parallel); });
    row("gbdt training", gts, gtp, model_digest(gs) == model_digest(gp));

    const auto noisy = data::noisy(4000, 1);
    TrainedModel ls, lp;
    const double lts = best_of(reps, [&] { ls = train_linear(noisy, LabelSpace::binary(), LinearConfig{}, Exec::serial); });
    const double ltp = best_of(reps, [&] { lp = train_linear(noisy, LabelSpace::binary(), LinearConfig{}, Exec::parallel); });
    row("linear training", lts, ltp, model_digest(ls) == model_digest(lp));

    ImportanceReport is, ip;
    const double its = best_of(reps, [&] {
        is = permutation_importance(gp, built.matrix, ImportanceMetric::macro_f1, 5, 0, Exec::serial);
    });
    const double itp = best_of(reps, [&] {
        ip = permutation_importance(gp, built.matrix, ImportanceMetric::macro_f1, 5, 0, Exec::parallel);
    });
    row("permutation importance", its, itp, is.scores == ip.scores);

    std::vector<std::string> code;
    for (const auto& s : corpus) code.push_back(s.code);
    NgramBackend ngram(4, 0.01);
    ngram.train(code);
    std::vector<double> cs, cp;
    const double cts = best_of(reps, [&] { cs = curvature_scores(corpus, ngram, 32, 0, Exec::serial); });
    const double ctp = best_of(reps, [&] { cp = curvature_scores(corpus, ngram, 32, 0, Exec::parallel); });
    row("curvature scoring", cts, ctp, cs == cp);
    return 0;
}
