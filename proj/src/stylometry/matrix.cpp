#include "codetect/stylometry/matrix.hpp"

#include "codetect/common.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

namespace codetect {

std::string schema_hash(std::span<const std::string> names) {
    std::string joined;
    for (const auto& n : names) {
        joined += n;
        joined += '\n';
    }
    return sha256_hex(joined);
}

std::string FeatureSchema::hash() const { return schema_hash(names); }

std::string FeatureSchema::to_json(const std::string& config_digest) const {
    nlohmann::ordered_json j;
    if (!config_digest.empty()) j["config_digest"] = config_digest;
    j["schema_hash"] = hash();
    j["max_missing"] = max_missing;
    j["features"] = names;
    nlohmann::ordered_json imp = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < names.size(); ++c) imp[names[c]] = imputation[c];
    j["imputation"] = imp;
    j["dropped"] = dropped;
    return j.dump(2);
}

FeatureSchema FeatureSchema::from_json(const std::string& text) {
    FeatureSchema s;
    try {
        const auto j = nlohmann::json::parse(text);
        s.names = j.at("features").get<std::vector<std::string>>();
        s.max_missing = j.at("max_missing").get<double>();
        s.dropped = j.at("dropped").get<std::vector<std::string>>();
        const auto& imp = j.at("imputation");
        for (const auto& n : s.names) s.imputation.push_back(imp.at(n).get<double>());
        if (j.contains("schema_hash") && j["schema_hash"].get<std::string>() != s.hash()) {
            throw validation_error("feature sidecar schema hash does not match its feature list");
        }
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("malformed feature sidecar: ") + e.what());
    }
    return s;
}

FeatureMatrix::FeatureMatrix(std::vector<std::string> names, std::size_t rows)
    : names_(std::move(names)), hash_(codetect::schema_hash(names_)), rows_(rows),
      values_(rows * names_.size(), 0.0), imputed_(rows * names_.size(), 0) {
    ids.resize(rows);
    labels.resize(rows);
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> rows) const {
    FeatureMatrix out(names_, rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::size_t r = rows[k];
        std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(r * cols()), cols(),
                    out.values_.begin() + static_cast<std::ptrdiff_t>(k * cols()));
        std::copy_n(imputed_.begin() + static_cast<std::ptrdiff_t>(r * cols()), cols(),
                    out.imputed_.begin() + static_cast<std::ptrdiff_t>(k * cols()));
        out.ids[k] = ids[r];
        out.labels[k] = labels[r];
    }
    return out;
}

void FeatureMatrix::set_column(std::size_t c, std::span<const double> values) {
    for (std::size_t r = 0; r < rows_; ++r) at(r, c) = values[r];
}

namespace {

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    if (n == 0) return 0.0;
    return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

FeatureSchema fit_schema(std::span<const FeatureVector> fit, double max_missing) {
    if (fit.empty()) throw stage_error("no rows to fit the feature schema on");
    std::set<std::string> candidates;
    for (const auto& fv : fit) {
        for (const auto& [name, value] : fv.values) candidates.insert(name);
    }

    FeatureSchema schema;
    schema.max_missing = max_missing;
    const auto n = static_cast<double>(fit.size());
    for (const auto& name : candidates) {
        std::vector<double> present;
        present.reserve(fit.size());
        for (const auto& fv : fit) {
            if (auto v = fv.get(name)) present.push_back(*v);
        }
        const double missing = (n - static_cast<double>(present.size())) / n;
        if (missing <= max_missing) {
            schema.names.push_back(name);
            schema.imputation.push_back(median(std::move(present)));
        } else {
            schema.dropped.push_back(name);
        }
    }
    if (schema.names.empty()) throw stage_error("all features sparse");
    return schema;
}

FeatureMatrix apply_schema(const FeatureSchema& schema, std::span<const FeatureVector> vectors,
                           std::span<const std::string> labels) {
    FeatureMatrix m(schema.names, vectors.size());
    for (std::size_t r = 0; r < vectors.size(); ++r) {
        m.ids[r] = vectors[r].sample_id;
        if (r < labels.size()) m.labels[r] = labels[r];
        for (std::size_t c = 0; c < schema.names.size(); ++c) {
            if (auto v = vectors[r].get(schema.names[c])) {
                m.at(r, c) = *v;
            } else {
                m.at(r, c) = schema.imputation[c];
                m.set_imputed(r, c, true);
            }
        }
    }
    return m;
}

BuiltMatrix build_matrix(std::span<const FeatureVector> vectors, std::span<const std::string> labels,
                         const std::vector<bool>& fit_mask, double max_missing) {
    std::vector<FeatureVector> fit;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (i < fit_mask.size() && fit_mask[i]) fit.push_back(vectors[i]);
    }
    BuiltMatrix out;
    out.schema = fit_schema(fit, max_missing);
    out.matrix = apply_schema(out.schema, vectors, labels);
    return out;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

}  // namespace

std::string matrix_to_csv(const FeatureMatrix& m) {
    std::string out = "id,label";
    for (const auto& n : m.feature_names()) out += "," + csv_field(n);
    out += '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += csv_field(m.ids[r]) + "," + csv_field(m.labels[r]);
        for (std::size_t c = 0; c < m.cols(); ++c) out += "," + format_double(m.at(r, c));
        out += '\n';
    }
    return out;
}

FeatureMatrix matrix_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw validation_error("empty feature CSV");
    auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "id" || header[1] != "label") {
        throw validation_error("feature CSV must start with id,label columns");
    }
    std::vector<std::string> names(header.begin() + 2, header.end());
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(split_csv_line(line));
        if (rows.back().size() != header.size()) {
            throw validation_error("feature CSV row " + std::to_string(rows.size()) + " has the wrong width");
        }
    }
    FeatureMatrix m(std::move(names), rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        m.ids[r] = rows[r][0];
        m.labels[r] = rows[r][1];
        for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = std::stod(rows[r][c + 2]);
    }
    return m;
}

}  // namespace codetect
