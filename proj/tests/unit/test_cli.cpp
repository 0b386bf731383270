#include "codetect/common.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

using namespace codetect;
namespace fs = std::filesystem;

namespace {

const std::string kData = CODETECT_TEST_DATA;
const std::string kCli = CODETECT_CLI;

struct Run {
    int status = -1;
    std::string out;
    std::string err;
};

Run run(const std::string& args, const std::string& stdin_file = "/dev/null") {
    const auto err_path = fs::temp_directory_path() / "codetect-cli-stderr";
    const std::string cmd = "'" + kCli + "' " + args + " < '" + stdin_file + "' 2> '" + err_path.string() + "'";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.err = read_file(err_path.string());
    return r;
}

fs::path fresh_dir(const std::string& name) {
    auto p = fs::temp_directory_path() / ("codetect-cli-" + name);
    fs::remove_all(p);
    return p;
}

const std::string kCorpus = "--corpus '" + kData + "/corpus.jsonl' --corpus '" + kData + "/hybrids.jsonl'";
const std::string kFast = " --model.gbdt.trees=120";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
    CHECK(run("--help").status == 0);
    CHECK(run("").status == 2);
    CHECK(run("bogus").status == 2);

    auto r = run("evaluate --corpus /nonexistent.jsonl");
    CHECK(r.status == 2);
    CHECK(r.err.find("codetect: config failed: corpus file does not exist") != std::string::npos);

    r = run("qa " + kCorpus + " --qa.bogus=1");
    CHECK(r.status == 2);
    CHECK(r.err.find("unknown config key 'qa.bogus'") != std::string::npos);
    CHECK(run("qa " + kCorpus + " --set qa.low_percentile=95 --set qa.high_percentile=5").status == 2);

    r = run("predict -m /nonexistent/model.json -l python --code 'x = 1'");
    CHECK(r.status == 4);
    const auto junk = fresh_dir("junk.json");
    write_file(junk.string(), "not a model");
    CHECK(run("predict -m '" + junk.string() + "' -l python --code 'x = 1'").status == 2);

    const auto blocker = fresh_dir("blocker");
    write_file(blocker.string(), "");
    r = run("qa " + kCorpus + " -o '" + blocker.string() + "/sub'");
    CHECK(r.status == 4);
    CHECK(r.err.find("cannot create output directory") != std::string::npos);

    // Every generator held out leaves a human-only training set.
    r = run("evaluate " + kCorpus + kFast + " -o '" + fresh_dir("human-only").string() + "'" +
            " --eval.protocol=ood '--eval.holdout={\"generator\":[\"gpt4o\",\"codellama\",\"llama31\",\"codeqwen15\",\"nxcode\"]}'");
    CHECK(r.status == 3);
    CHECK(r.err.find("codetect: evaluate failed:") != std::string::npos);
}

TEST_CASE("evaluate writes a reproducible artifact set") {
    const auto a = fresh_dir("eval-a"), b = fresh_dir("eval-b");
    auto ra = run("evaluate " + kCorpus + kFast + " -j 1 -o '" + a.string() + "'");
    REQUIRE(ra.status == 0);
    auto rb = run("evaluate " + kCorpus + kFast + " -j 4 -o '" + b.string() + "'");
    REQUIRE(rb.status == 0);
    CHECK(ra.out == rb.out);
    for (const auto* name : {"config.json", "qa_report.json", "predictions.jsonl", "eval_report.json", "confusion.csv",
                             "eval_table.txt", "depth_stats.json", "degradation.json", "test_features.csv",
                             "manifest.json"}) {
        INFO(name);
        REQUIRE(fs::exists(a / name));
        CHECK(read_file((a / name).string()) == read_file((b / name).string()));
    }
    const auto manifest = nlohmann::json::parse(read_file((a / "manifest.json").string()));
    CHECK(manifest["artifacts"]["predictions.jsonl"] == sha256_hex(read_file((a / "predictions.jsonl").string())));
    const auto report = nlohmann::json::parse(read_file((a / "eval_report.json").string()));
    CHECK(report["task"] == "binary");
    CHECK(report["protocol"]["model_digest"] == manifest["artifacts"]["model.json"]);

    // Re-evaluating the saved model reproduces the report.
    const auto c = fresh_dir("eval-c");
    REQUIRE(run("evaluate " + kCorpus + kFast + " -m '" + (a / "model.json").string() + "' -o '" + c.string() + "'")
                .status == 0);
    CHECK(read_file((c / "eval_report.json").string()) == read_file((a / "eval_report.json").string()));
}

TEST_CASE("score consumes an external predictions file") {
    const auto e = fresh_dir("score-eval"), s = fresh_dir("score-out");
    REQUIRE(run("evaluate " + kCorpus + kFast + " -o '" + e.string() + "'").status == 0);
    const auto preds = (e / "predictions.jsonl").string();
    auto r = run("score " + kCorpus + " -p '" + preds + "' -o '" + s.string() + "'");
    REQUIRE(r.status == 0);
    CHECK(r.out == read_file((e / "eval_table.txt").string()));
    CHECK(read_file((s / "confusion.csv").string()) == read_file((e / "confusion.csv").string()));
    const auto ours = nlohmann::json::parse(read_file((s / "eval_report.json").string()));
    const auto theirs = nlohmann::json::parse(read_file((e / "eval_report.json").string()));
    CHECK(ours["overall"] == theirs["overall"]);
    CHECK(ours["groups"] == theirs["groups"]);
    CHECK(ours["protocol"]["protocol"] == "external");

    std::string text = read_file(preds);
    const auto bad = fresh_dir("score-bad.jsonl");
    write_file(bad.string(), "{\"id\":\"nope\",\"gold\":\"human\",\"pred\":\"llm\",\"scores\":{}}\n");
    r = run("score " + kCorpus + " -p '" + bad.string() + "' -o '" + s.string() + "'");
    CHECK(r.status == 2);
    CHECK(r.err.find("prediction id nope is not in the corpus") != std::string::npos);

    auto first = nlohmann::json::parse(text.substr(0, text.find('\n')));
    first["gold"] = first["gold"] == "human" ? "llm" : "human";
    write_file(bad.string(), first.dump() + "\n");
    r = run("score " + kCorpus + " -p '" + bad.string() + "' -o '" + s.string() + "'");
    CHECK(r.status == 2);
    CHECK(r.err.find("disagrees with the corpus") != std::string::npos);
}

TEST_CASE("predict reads files, stdin and inline code") {
    const auto dir = fresh_dir("predict");
    REQUIRE(run("train " + kCorpus + kFast + " -o '" + dir.string() + "'").status == 0);
    const std::string model = " -m '" + (dir / "model.json").string() + "'";
    const std::string py = kData + "/fixtures/f00.py";

    const auto file = run("predict" + model + " -l python -f '" + py + "'");
    REQUIRE(file.status == 0);
    const auto j = nlohmann::json::parse(file.out);
    CHECK(j.contains("label"));
    CHECK(j["scores"].size() == 2);
    CHECK(j["ast_available"] == true);

    const auto piped = run("predict" + model + " -l python", py);
    CHECK(piped.out == file.out);
    const auto both = run("predict" + model + " -l python -f '" + py + "' -f -", py);
    CHECK(both.out == file.out + file.out);

    auto r = run("predict" + model + " -l cobol --code 'x'");
    CHECK(r.status == 2);
    CHECK(r.err.find("unsupported language 'cobol'") != std::string::npos);
    CHECK(run("predict" + model + " -l python --code ''").status == 2);
    r = run("predict" + model + " -l python --code ')))((('");
    CHECK(r.status == 0);
    CHECK(r.err.find("warning:") != std::string::npos);
}

TEST_CASE("attribute, explain and zeroshot") {
    const auto dir = fresh_dir("misc");
    auto r = run("attribute " + kCorpus + kFast + " -o '" + (dir / "attr").string() + "'");
    REQUIRE(r.status == 0);
    const auto report = nlohmann::json::parse(read_file((dir / "attr" / "eval_report.json").string()));
    CHECK(report["task"] == "attribution");
    CHECK(report["labels"].size() == 6);

    r = run("explain " + kCorpus + kFast + " -o '" + (dir / "explain").string() + "'");
    REQUIRE(r.status == 0);
    const auto imp = nlohmann::json::parse(read_file((dir / "explain" / "importance.json").string()));
    CHECK(imp["method"] == "gain");

    r = run("zeroshot " + kCorpus + " --zeroshot.perturbations=16 -o '" + (dir / "zs").string() + "'");
    REQUIRE(r.status == 0);
    const auto zs = nlohmann::json::parse(read_file((dir / "zs" / "zeroshot_report.json").string()));
    CHECK(zs.contains("threshold_fit"));
}

TEST_CASE("zeroshot serve mode speaks the adapter protocol") {
    const auto req = fresh_dir("requests.jsonl");
    write_file(req.string(), "{\"id\":\"a\",\"code\":\"x = 1\\n\"}\n{\"id\":\"b\",\"code\":\"int main() {}\\n\"}\n");
    const auto r = run("zeroshot --serve " + kCorpus + " --zeroshot.perturbations=4", req.string());
    REQUIRE(r.status == 0);
    const auto first = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
    CHECK(first["id"] == "a");
    CHECK(first["perturbation_logliks"].size() == 4);
    CHECK(r.out == run("zeroshot --serve " + kCorpus + " --zeroshot.perturbations=4", req.string()).out);
}

}
