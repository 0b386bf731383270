#include "codetect/zeroshot/adapter.hpp"

#include "codetect/common.hpp"
#include "codetect/random.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <istream>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

namespace codetect {

std::string adapter_request_jsonl(std::span<const CodeSample> samples) {
    std::string out;
    for (const auto& s : samples) {
        nlohmann::ordered_json j;
        j["id"] = s.id;
        j["code"] = s.code;
        out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
    }
    return out;
}

std::string adapter_response_line(const AdapterRecord& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["loglik"] = r.loglik;
    j["perturbation_logliks"] = r.perturbation_logliks;
    return j.dump() + "\n";
}

std::vector<AdapterRecord> parse_adapter_response(std::string_view jsonl) {
    std::vector<AdapterRecord> out;
    std::istringstream in{std::string(jsonl)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line)) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            AdapterRecord r;
            r.id = j.at("id").get<std::string>();
            r.loglik = j.at("loglik").get<double>();
            r.perturbation_logliks = j.at("perturbation_logliks").get<std::vector<double>>();
            out.push_back(std::move(r));
        } catch (const nlohmann::json::exception& e) {
            throw stage_error("adapter response line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<AdapterRecord> run_adapter_process(const std::string& command, std::span<const CodeSample> samples) {
    const auto dir = std::filesystem::temp_directory_path();
    std::string path = (dir / "codetect-adapter-XXXXXX").string();
    const int fd = mkstemp(path.data());
    if (fd < 0) throw io_error("cannot create a temporary file for the adapter request");
    close(fd);
    write_file(path, adapter_request_jsonl(samples));

    std::string output;
    FILE* pipe = popen((command + " < '" + path + "'").c_str(), "r");
    if (!pipe) {
        std::filesystem::remove(path);
        throw stage_error("cannot start adapter command: " + command);
    }
    char buf[65536];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
    const int status = pclose(pipe);
    std::filesystem::remove(path);
    if (status != 0) throw stage_error("adapter command exited with status " + std::to_string(status));
    return parse_adapter_response(output);
}

void serve_adapter(std::istream& in, std::ostream& out, const LikelihoodBackend& backend, std::size_t k,
                   std::uint64_t seed) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line)) continue;
        AdapterRecord r;
        std::string code;
        try {
            const auto j = nlohmann::json::parse(line);
            r.id = j.at("id").get<std::string>();
            code = j.at("code").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw validation_error("adapter request line " + std::to_string(lineno) + ": " + e.what());
        }
        const std::uint64_t stream = std::stoull(content_id(code), nullptr, 16);
        r.loglik = backend.log_likelihood(code);
        r.perturbation_logliks = backend.sample_perturbations(code, k, mix_seed(seed, stream)).logliks;
        out << adapter_response_line(r);
    }
    out.flush();
}

PrecomputedBackend::PrecomputedBackend(std::span<const CodeSample> samples, std::span<const AdapterRecord> records) {
    std::unordered_map<std::string, const AdapterRecord*> by_id;
    for (const auto& r : records) by_id.emplace(r.id, &r);
    for (const auto& s : samples) {
        auto it = by_id.find(s.id);
        if (it == by_id.end()) throw stage_error("adapter returned no result for id " + s.id);
        by_code_.emplace(s.code, *it->second);
    }
}

const AdapterRecord& PrecomputedBackend::lookup(std::string_view code) const {
    auto it = by_code_.find(std::string(code));
    if (it == by_code_.end()) throw stage_error("no adapter result for this code");
    return it->second;
}

double PrecomputedBackend::log_likelihood(std::string_view code) const { return lookup(code).loglik; }

PerturbationSet PrecomputedBackend::sample_perturbations(std::string_view code, std::size_t, std::uint64_t) const {
    PerturbationSet p;
    p.logliks = lookup(code).perturbation_logliks;
    return p;
}

}  // namespace codetect
