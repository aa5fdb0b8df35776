#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relph/geometry.hpp"

namespace relph {

/// The three qualitative spatial regimes the generator can produce.
enum class Regime { Elimination, Equilibrium, Escape };

std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

/// Knob grids for the 9x9 parameter sweep.
inline constexpr std::array<double, 9> kChiGrid{0.5, 1.0, 1.5, 2.0, 2.5,
                                                3.0, 3.5, 4.0, 4.5};
inline constexpr std::array<double, 9> kCHalfGrid{0.1, 0.2, 0.3, 0.4, 0.5,
                                                  0.6, 0.7, 0.8, 0.9};

struct RegimeParams {
    std::optional<Regime> regime;    // explicit regime, or ...
    std::optional<double> chi;       // ... both knobs, mapped to a regime
    std::optional<double> c_half;
    double domain = 100.0;
    std::uint64_t seed = 0;
    /// Vessels depend only on this, so fixing it holds vessel positions
    /// constant across regimes and knobs. Defaults to `seed`.
    std::optional<std::uint64_t> vessel_seed;
    std::optional<int> vessels;
    std::optional<int> tumor;
    std::optional<int> necrotic;
    std::optional<int> macrophages;
};

/// One labeled point cloud: a vessel ring plus regime-dependent tumor,
/// necrotic and macrophage layouts. Deterministic under (seed, vessel_seed).
LabeledPointCloud generate(const RegimeParams& params);

/// Deterministic region map: low chi is equilibrium; otherwise low c_half is
/// elimination and high c_half is escape.
Regime regime_for_knobs(double chi, double c_half);

/// Grid cells whose 4-neighborhood maps to a single region. Boundary cells
/// form the mixing band where the realized regime is sampled.
bool grid_cell_is_interior(int chi_idx, int c_half_idx);

struct GridCellCloud {
    int chi_idx = 0;
    int c_half_idx = 0;
    int rep = 0;
    Regime designed = Regime::Equilibrium;
    Regime realized = Regime::Equilibrium;
    bool interior = false;
    LabeledPointCloud cloud;
};

/// The full 9x9 x reps sweep. Elimination cells keep a small residual tumor
/// population (3-8 points) so every cloud supports the witness pipeline.
/// With relabel_fraction > 0 each cloud is post-processed by relabel_noise
/// over {N, M1, M2}.
std::vector<GridCellCloud> generate_grid(std::uint64_t master_seed, int reps,
                                         double relabel_fraction = 0.0);

struct LabeledExample {
    LabeledPointCloud cloud;
    Regime regime = Regime::Equilibrium;
    int label = 0;  // 1 when M2 macrophages dominate
    std::uint64_t seed = 0;
};

/// Mixed-regime corpus for the supervised pipeline (roughly 40/35/25
/// elimination/equilibrium/escape), labeled by phenotype majority.
std::vector<LabeledExample> generate_classification_corpus(std::uint64_t master_seed,
                                                           int n);

/// 1 when fewer than half of the macrophages are M1 (omega < 0.5).
int omega_majority_label(const LabeledPointCloud& cloud);

}  // namespace relph
