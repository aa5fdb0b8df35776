#pragma once

#include <string>
#include <vector>

#include "relph/persistence.hpp"
#include "relph/persistence_image.hpp"

namespace relph {

/// Persistence diagram scatter plot (circles for pd0, crosses for pd1,
/// markers on the top rail for infinite deaths).
std::string svg_diagram_plot(const PersistenceDiagram& pd0, const PersistenceDiagram& pd1,
                             const std::string& title);

/// Heatmap of a persistence image (or any row-major grid).
std::string svg_heatmap(int rows, int cols, const std::vector<double>& flat,
                        const std::string& title);

/// Box plots (min, quartiles, median, max) for labeled accuracy samples.
std::string svg_boxplot(const std::vector<std::pair<std::string, std::vector<double>>>& groups,
                        const std::string& title);

/// 9x9 grid map of categorical values (e.g. modal cluster ids); -1 cells are
/// drawn empty. `values` is row-major with rows = c_half index (top = high).
std::string svg_grid_map(const std::vector<int>& values, const std::string& title);

/// 9x9 grid map of scalar values in [0, 1] (e.g. cluster purity).
std::string svg_grid_scalar_map(const std::vector<double>& values, const std::string& title);

}  // namespace relph
