#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "relph/filtration.hpp"
#include "relph/geometry.hpp"
#include "relph/ml.hpp"
#include "relph/persistence.hpp"

namespace relph {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// Write via a temp file plus rename so concurrent runs never observe a
/// partially written file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

// Point-cloud CSV: header `x,y,label,omega`, omega empty for non-macrophages.
std::string cloud_to_csv(const LabeledPointCloud& cloud);
LabeledPointCloud cloud_from_csv(const std::string& text);
void write_cloud_csv(const std::filesystem::path& path, const LabeledPointCloud& cloud);
LabeledPointCloud read_cloud_csv(const std::filesystem::path& path);

// Diagram JSON: {"dim": k, "pairs": [[b, d or "inf"], ...]}.
std::string diagram_to_json(const PersistenceDiagram& pd);
PersistenceDiagram diagram_from_json(const std::string& text);
void write_diagram_json(const std::filesystem::path& path, const PersistenceDiagram& pd);
PersistenceDiagram read_diagram_json(const std::filesystem::path& path);

// FilteredComplex JSON: array of {"value": v, "vertices": [...]} in
// filtration order.
std::string complex_to_json(const FilteredComplex& fc);

// Feature CSV: first column `id`, one named column per feature, optional
// trailing integer `label` column.
std::string features_to_csv(const std::vector<std::string>& ids,
                            const std::vector<std::string>& names, const Matrix& X,
                            const std::vector<int>* labels = nullptr);

struct FeatureTable {
    std::vector<std::string> ids;
    std::vector<std::string> names;
    Matrix X;
    std::vector<int> labels;  // empty unless the CSV has a label column
};

FeatureTable feature_table_from_csv(const std::string& text);
FeatureTable read_feature_csv(const std::filesystem::path& path);

}  // namespace relph
