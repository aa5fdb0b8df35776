#include "relph/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "relph/errors.hpp"

namespace relph {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename to " + path.string() + " failed: " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string::size_type start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(std::move(line));
        start = end + 1;
    }
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto end = line.find(',', start);
        if (end == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, end - start));
        start = end + 1;
    }
    return fields;
}

double parse_double(const std::string& s, const std::string& context) {
    double value = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw IoError("bad number '" + s + "' in " + context);
    return value;
}

}  // namespace

std::string cloud_to_csv(const LabeledPointCloud& cloud) {
    std::string out = "x,y,label,omega\n";
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        out += format_double(cloud.points[i].x);
        out += ',';
        out += format_double(cloud.points[i].y);
        out += ',';
        out += to_string(cloud.labels[i]);
        out += ',';
        if (!std::isnan(cloud.omega[i])) out += format_double(cloud.omega[i]);
        out += '\n';
    }
    return out;
}

LabeledPointCloud cloud_from_csv(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty() || lines[0] != "x,y,label,omega")
        throw IoError("point-cloud CSV must start with header 'x,y,label,omega'");
    LabeledPointCloud cloud;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i]);
        if (fields.size() != 4)
            throw IoError("row " + std::to_string(i) + " has " +
                          std::to_string(fields.size()) + " fields, expected 4");
        const std::string context = "row " + std::to_string(i);
        cloud.points.push_back(
            {parse_double(fields[0], context), parse_double(fields[1], context)});
        cloud.labels.push_back(species_from_string(fields[2]));
        cloud.omega.push_back(fields[3].empty()
                                  ? std::numeric_limits<double>::quiet_NaN()
                                  : parse_double(fields[3], context));
    }
    cloud.validate();
    return cloud;
}

void write_cloud_csv(const std::filesystem::path& path, const LabeledPointCloud& cloud) {
    atomic_write(path, cloud_to_csv(cloud));
}

LabeledPointCloud read_cloud_csv(const std::filesystem::path& path) {
    return cloud_from_csv(read_file(path));
}

std::string diagram_to_json(const PersistenceDiagram& pd) {
    nlohmann::json j;
    j["dim"] = pd.dim;
    j["pairs"] = nlohmann::json::array();
    for (const auto& [b, d] : pd.pairs) {
        nlohmann::json pair = nlohmann::json::array();
        pair.push_back(b);
        if (std::isinf(d))
            pair.push_back("inf");
        else
            pair.push_back(d);
        j["pairs"].push_back(std::move(pair));
    }
    return j.dump(2) + "\n";
}

PersistenceDiagram diagram_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad diagram JSON: ") + e.what());
    }
    if (!j.contains("dim") || !j.contains("pairs"))
        throw IoError("diagram JSON needs 'dim' and 'pairs'");
    PersistenceDiagram pd;
    pd.dim = j["dim"].get<int>();
    for (const auto& pair : j["pairs"]) {
        if (!pair.is_array() || pair.size() != 2)
            throw IoError("diagram pair must be a 2-element array");
        const double b = pair[0].get<double>();
        const double d = pair[1].is_string()
                             ? (pair[1].get<std::string>() == "inf"
                                    ? kInfValue
                                    : throw IoError("death must be a number or \"inf\""))
                             : pair[1].get<double>();
        pd.pairs.emplace_back(b, d);
    }
    return pd;
}

void write_diagram_json(const std::filesystem::path& path, const PersistenceDiagram& pd) {
    atomic_write(path, diagram_to_json(pd));
}

PersistenceDiagram read_diagram_json(const std::filesystem::path& path) {
    return diagram_from_json(read_file(path));
}

std::string complex_to_json(const FilteredComplex& fc) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& fs : fc.simplices) {
        nlohmann::json entry;
        entry["value"] = fs.value;
        entry["vertices"] = nlohmann::json::array();
        for (int d = 0; d <= fs.simplex.dim; ++d) entry["vertices"].push_back(fs.simplex.v[d]);
        j.push_back(std::move(entry));
    }
    return j.dump(2) + "\n";
}

std::string features_to_csv(const std::vector<std::string>& ids,
                            const std::vector<std::string>& names, const Matrix& X,
                            const std::vector<int>* labels) {
    if (ids.size() != X.rows) throw InvalidInputError("features_to_csv: id/row mismatch");
    if (names.size() != X.cols)
        throw InvalidInputError("features_to_csv: name/column mismatch");
    if (labels && labels->size() != X.rows)
        throw InvalidInputError("features_to_csv: label/row mismatch");
    std::string out = "id";
    for (const auto& name : names) {
        out += ',';
        out += name;
    }
    if (labels) out += ",label";
    out += '\n';
    for (std::size_t i = 0; i < X.rows; ++i) {
        out += ids[i];
        for (std::size_t j = 0; j < X.cols; ++j) {
            out += ',';
            out += format_double(X.at(i, j));
        }
        if (labels) {
            out += ',';
            out += std::to_string((*labels)[i]);
        }
        out += '\n';
    }
    return out;
}

FeatureTable feature_table_from_csv(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw IoError("empty feature CSV");
    auto header = split_fields(lines[0]);
    if (header.empty() || header[0] != "id")
        throw IoError("feature CSV must start with an 'id' column");
    FeatureTable table;
    const bool has_labels = header.size() >= 2 && header.back() == "label";
    const std::size_t n_features = header.size() - 1 - (has_labels ? 1 : 0);
    table.names.assign(header.begin() + 1, header.end() - (has_labels ? 1 : 0));
    table.X.cols = n_features;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i]);
        if (fields.size() != header.size())
            throw IoError("feature CSV row " + std::to_string(i) + " has " +
                          std::to_string(fields.size()) + " fields, expected " +
                          std::to_string(header.size()));
        table.ids.push_back(fields[0]);
        const std::string context = "feature row " + std::to_string(i);
        for (std::size_t j = 0; j < n_features; ++j)
            table.X.v.push_back(parse_double(fields[1 + j], context));
        if (has_labels)
            table.labels.push_back(
                static_cast<int>(parse_double(fields.back(), context)));
        ++table.X.rows;
    }
    return table;
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
    return feature_table_from_csv(read_file(path));
}

}  // namespace relph
