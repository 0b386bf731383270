#include "codetect/pipeline/run_config.hpp"

#include "codetect/common.hpp"
#include "codetect/random.hpp"

#include <filesystem>

namespace codetect {

nlohmann::json default_config_json() {
    const RunConfig d;
    nlohmann::json j;
    j["corpus"] = {{"paths", nlohmann::json::array()}};
    j["qa"] = {{"low_percentile", d.qa.low_percentile},
               {"high_percentile", d.qa.high_percentile},
               {"per_language", d.qa.per_language},
               {"dedup", d.qa.dedup}};
    j["split"] = {{"ratios", d.split.ratios}, {"stratify_keys", d.split.stratify_keys}, {"keep_existing", false}};
    j["features"] = {{"max_missing", d.max_missing}};
    j["model"] = {{"kind", "gbdt"},
                  {"gbdt", nlohmann::json::parse(d.model.gbdt.to_json().dump())},
                  {"linear", nlohmann::json::parse(d.model.linear.to_json().dump())}};
    j["model"]["gbdt"].erase("seed");
    j["model"]["linear"].erase("seed");
    j["task"] = "binary";
    j["eval"] = {{"protocol", "in-domain"},
                 {"holdout", {{"generator", nlohmann::json::array()},
                              {"source", nlohmann::json::array()},
                              {"language", nlohmann::json::array()}}},
                 {"breakdown", {"language", "source", "generator"}},
                 {"degradation_bins", d.degradation_bins}};
    j["zeroshot"] = {{"order", d.zeroshot.order},
                     {"add_k", d.zeroshot.add_k},
                     {"perturbations", d.zeroshot.perturbations},
                     {"adapter_command", ""}};
    j["explain"] = {{"method", "gain"}, {"metric", "macro_f1"}, {"repeats", d.explain.repeats}};
    j["output"] = {{"dir", d.out_dir}};
    j["seed"] = d.seed;
    j["jobs"] = d.jobs;
    return j;
}

namespace {

// Every leaf of `user` must exist in `defaults`; objects merge recursively.
void merge_checked(nlohmann::json& defaults, const nlohmann::json& user, const std::string& prefix) {
    if (!user.is_object()) throw validation_error("config section '" + prefix + "' must be an object");
    for (const auto& [key, value] : user.items()) {
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        if (!defaults.contains(key)) throw validation_error("unknown config key '" + path + "'");
        auto& slot = defaults[key];
        if (slot.is_object() && key != "holdout") {
            merge_checked(slot, value, path);
        } else {
            slot = value;
        }
    }
}

template <typename T>
T get(const nlohmann::json& j, const char* section, const char* key) {
    try {
        return j.at(section).at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw validation_error(std::string("config value '") + section + "." + key + "' has the wrong type");
    }
}

}  // namespace

void apply_override(nlohmann::json& tree, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw validation_error("override '" + std::string(assignment) + "' must look like key.path=value");
    }
    const std::string path(assignment.substr(0, eq));
    const std::string raw(assignment.substr(eq + 1));
    nlohmann::json value;
    try {
        value = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::exception&) {
        value = raw;
    }
    nlohmann::json* node = &tree;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!node->is_object() || !node->contains(key)) throw validation_error("unknown config key '" + path + "'");
        node = &(*node)[key];
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    *node = std::move(value);
}

RunConfig config_from_json(const nlohmann::json& user, const std::string& base_dir) {
    nlohmann::json j = default_config_json();
    merge_checked(j, user, "");
    RunConfig c;
    try {
        for (const auto& p : j.at("corpus").at("paths")) {
            std::filesystem::path path = p.get<std::string>();
            if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
            c.corpus_paths.push_back(path.lexically_normal().string());
        }
    } catch (const nlohmann::json::exception&) {
        throw validation_error("config value 'corpus.paths' must be a list of strings");
    }
    c.qa.low_percentile = get<int>(j, "qa", "low_percentile");
    c.qa.high_percentile = get<int>(j, "qa", "high_percentile");
    c.qa.per_language = get<bool>(j, "qa", "per_language");
    c.qa.dedup = get<bool>(j, "qa", "dedup");
    c.split.ratios = get<std::array<double, 3>>(j, "split", "ratios");
    c.split.stratify_keys = get<std::vector<std::string>>(j, "split", "stratify_keys");
    c.keep_existing_splits = get<bool>(j, "split", "keep_existing");
    c.max_missing = get<double>(j, "features", "max_missing");
    c.model.kind = parse_model_kind(get<std::string>(j, "model", "kind"));
    try {
        c.model.gbdt = GbdtConfig::from_json(j.at("model").at("gbdt"));
        c.model.linear = LinearConfig::from_json(j.at("model").at("linear"));
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("invalid model configuration: ") + e.what());
    }
    try {
        c.task = parse_task(j.at("task").get<std::string>());
    } catch (const nlohmann::json::exception&) {
        throw validation_error("config value 'task' must be a string");
    }
    const auto protocol = get<std::string>(j, "eval", "protocol");
    if (protocol == "ood") {
        try {
            c.ood = OodProtocol::from_json(j.at("eval").at("holdout"));
        } catch (const nlohmann::json::exception&) {
            throw validation_error("config value 'eval.holdout' must map axes to lists of strings");
        }
    } else if (protocol != "in-domain") {
        throw validation_error("eval.protocol must be 'in-domain' or 'ood'");
    }
    c.breakdown.clear();
    for (const auto& k : get<std::vector<std::string>>(j, "eval", "breakdown")) c.breakdown.push_back(parse_group_key(k));
    c.degradation_bins = get<std::size_t>(j, "eval", "degradation_bins");
    c.zeroshot.order = get<int>(j, "zeroshot", "order");
    c.zeroshot.add_k = get<double>(j, "zeroshot", "add_k");
    c.zeroshot.perturbations = get<int>(j, "zeroshot", "perturbations");
    c.zeroshot.adapter_command = get<std::string>(j, "zeroshot", "adapter_command");
    const auto method = get<std::string>(j, "explain", "method");
    if (method == "gain") {
        c.explain.method = ImportanceMethod::gain;
    } else if (method == "permutation") {
        c.explain.method = ImportanceMethod::permutation;
    } else {
        throw validation_error("explain.method must be 'gain' or 'permutation'");
    }
    c.explain.metric = parse_importance_metric(get<std::string>(j, "explain", "metric"));
    c.explain.repeats = get<int>(j, "explain", "repeats");
    c.out_dir = get<std::string>(j, "output", "dir");
    try {
        c.seed = j.at("seed").get<std::uint64_t>();
        c.jobs = j.at("jobs").get<int>();
    } catch (const nlohmann::json::exception&) {
        throw validation_error("config values 'seed' and 'jobs' must be non-negative integers");
    }
    c.finalize();
    return c;
}

void RunConfig::finalize() {
    qa.validate();
    split.seed = seed;
    split.validate();
    model.gbdt.seed = mix_seed(seed, 1);
    model.linear.seed = mix_seed(seed, 2);
    model.validate();
    if (!(max_missing >= 0 && max_missing <= 1)) throw validation_error("features.max_missing must be in [0, 1]");
    if (degradation_bins < 1) throw validation_error("eval.degradation_bins must be at least 1");
    if (zeroshot.perturbations < 2) throw validation_error("zeroshot.perturbations must be at least 2");
    if (zeroshot.order < 1 || zeroshot.order > 4) throw validation_error("zeroshot.order must be in [1, 4]");
    if (!(zeroshot.add_k > 0)) throw validation_error("zeroshot.add_k must be positive");
    if (explain.repeats < 1) throw validation_error("explain.repeats must be at least 1");
    if (jobs < 0) throw validation_error("jobs must be non-negative");
    for (const auto& p : corpus_paths) {
        if (!std::filesystem::exists(p)) throw validation_error("corpus file does not exist: " + p);
    }
}

nlohmann::json RunConfig::canonical() const {
    nlohmann::json j;
    j["corpus"]["paths"] = corpus_paths;
    j["qa"] = {{"low_percentile", qa.low_percentile},
               {"high_percentile", qa.high_percentile},
               {"per_language", qa.per_language},
               {"dedup", qa.dedup}};
    j["split"] = {{"ratios", split.ratios}, {"stratify_keys", split.stratify_keys}, {"keep_existing", keep_existing_splits}};
    j["features"]["max_missing"] = max_missing;
    j["model"] = nlohmann::json::parse(model.to_json().dump());
    j["task"] = to_string(task);
    j["eval"]["protocol"] = ood ? "ood" : "in-domain";
    if (ood) j["eval"]["holdout"] = nlohmann::json::parse(ood->to_json().dump());
    for (auto k : breakdown) j["eval"]["breakdown"].push_back(to_string(k));
    j["eval"]["degradation_bins"] = degradation_bins;
    j["zeroshot"] = {{"order", zeroshot.order},
                     {"add_k", zeroshot.add_k},
                     {"perturbations", zeroshot.perturbations},
                     {"adapter_command", zeroshot.adapter_command}};
    j["explain"] = {{"method", explain.method == ImportanceMethod::gain ? "gain" : "permutation"},
                    {"metric", to_string(explain.metric)},
                    {"repeats", explain.repeats}};
    j["seed"] = seed;
    return j;
}

std::string RunConfig::digest() const { return sha256_hex(canonical().dump()); }

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    nlohmann::json tree = nlohmann::json::object();
    std::string base;
    if (!path.empty()) {
        const std::string text = read_file(path);
        try {
            tree = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw validation_error("config file " + path + " is not valid JSON: " + e.what());
        }
        base = std::filesystem::path(path).parent_path().string();
    }
    // Overrides address the full tree, so merge onto the defaults first.
    nlohmann::json full = default_config_json();
    merge_checked(full, tree, "");
    for (const auto& o : overrides) apply_override(full, o);
    return config_from_json(full, base);
}

}  // namespace codetect
