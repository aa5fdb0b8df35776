#include "relph/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relph/errors.hpp"
#include "relph/ml.hpp"
#include "relph/random.hpp"

namespace relph {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Elimination: return "elimination";
        case Regime::Equilibrium: return "equilibrium";
        case Regime::Escape: return "escape";
    }
    return "?";
}

Regime regime_from_string(const std::string& s) {
    if (s == "elimination") return Regime::Elimination;
    if (s == "equilibrium") return Regime::Equilibrium;
    if (s == "escape") return Regime::Escape;
    throw InvalidInputError("unknown regime '" + s + "'");
}

Regime regime_for_knobs(double chi, double c_half) {
    if (chi <= 1.75) return Regime::Equilibrium;
    return c_half <= 0.45 ? Regime::Elimination : Regime::Escape;
}

namespace {

Regime grid_region(int chi_idx, int c_half_idx) {
    return regime_for_knobs(kChiGrid[chi_idx], kCHalfGrid[c_half_idx]);
}

}  // namespace

bool grid_cell_is_interior(int chi_idx, int c_half_idx) {
    const Regime own = grid_region(chi_idx, c_half_idx);
    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) {
        const int i = chi_idx + di[k];
        const int j = c_half_idx + dj[k];
        if (i < 0 || i >= 9 || j < 0 || j >= 9) continue;
        if (grid_region(i, j) != own) return false;
    }
    return true;
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Domain {
    double side;
    Point center() const { return {0.5 * side, 0.5 * side}; }
    bool contains(const Point& p) const {
        return p.x >= 0.0 && p.x <= side && p.y >= 0.0 && p.y <= side;
    }
};

Point clamp_resample(const Domain& dom, Rng& rng, auto draw) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        const Point p = draw();
        if (dom.contains(p)) return p;
    }
    // Pathological parameters only; fall back to a uniform domain point.
    return {rng.uniform(0.0, dom.side), rng.uniform(0.0, dom.side)};
}

Point blob_point(const Domain& dom, Rng& rng, Point center, double sigma, double cap) {
    return clamp_resample(dom, rng, [&] {
        for (int i = 0; i < 64; ++i) {
            const Point p{center.x + sigma * rng.normal(), center.y + sigma * rng.normal()};
            if (std::hypot(p.x - center.x, p.y - center.y) <= cap) return p;
        }
        return center;
    });
}

Point disk_point(const Domain& dom, Rng& rng, Point center, double radius) {
    return clamp_resample(dom, rng, [&] {
        for (int i = 0; i < 64; ++i) {
            const Point p{center.x + radius * (2.0 * rng.uniform01() - 1.0),
                          center.y + radius * (2.0 * rng.uniform01() - 1.0)};
            if (std::hypot(p.x - center.x, p.y - center.y) <= radius) return p;
        }
        return center;
    });
}

Point annulus_point(const Domain& dom, Rng& rng, Point center, double r_in, double r_out) {
    return clamp_resample(dom, rng, [&] {
        const double theta = rng.uniform(0.0, kTwoPi);
        const double r = std::sqrt(rng.uniform(r_in * r_in, r_out * r_out));
        return Point{center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
    });
}

struct Builder {
    std::vector<Point> points;
    std::vector<Species> labels;
    std::vector<double> omega;

    void add(const Point& p, Species s,
             double om = std::numeric_limits<double>::quiet_NaN()) {
        points.push_back(p);
        labels.push_back(s);
        omega.push_back(om);
    }
};

void add_macrophage(Builder& b, const Point& p, double m1_fraction, Rng& rng) {
    if (rng.uniform01() < m1_fraction)
        b.add(p, Species::M1, rng.uniform(0.03, 0.47));
    else
        b.add(p, Species::M2, rng.uniform(0.53, 0.97));
}

}  // namespace

LabeledPointCloud generate(const RegimeParams& params) {
    Regime regime;
    if (params.regime)
        regime = *params.regime;
    else if (params.chi && params.c_half)
        regime = regime_for_knobs(*params.chi, *params.c_half);
    else
        throw InvalidInputError("generate: provide a regime or both knobs (chi, c_half)");
    if (!(params.domain > 0.0)) throw InvalidInputError("generate: domain side must be > 0");

    const Domain dom{params.domain};
    const Point center = dom.center();
    const std::uint64_t vessel_seed = params.vessel_seed.value_or(params.seed);
    Rng vessel_rng(mix_seed(vessel_seed, 0x1));
    Rng tumor_rng(mix_seed(params.seed, 0x2));
    Rng necro_rng(mix_seed(params.seed, 0x3));
    Rng macro_rng(mix_seed(params.seed, 0x4));

    const int n_vessels = params.vessels.value_or(42);
    int n_tumor = params.tumor.value_or(
        regime == Regime::Elimination ? 0 : 150 + static_cast<int>(tumor_rng.below(40)));
    const int n_necrotic = params.necrotic.value_or(90 + static_cast<int>(necro_rng.below(30)));
    const int n_macro = params.macrophages.value_or(190 + static_cast<int>(macro_rng.below(40)));
    for (int c : {n_vessels, n_tumor, n_necrotic, n_macro})
        if (c < 0) throw InvalidInputError("generate: species counts must be nonnegative");
    if (n_vessels < 3)
        throw InvalidInputError("generate: need at least 3 vessels for a landmark set");

    Builder b;

    // Vessels on a jittered ring near the boundary; fixed across regimes for
    // a given vessel seed.
    std::vector<Point> vessels;
    for (int i = 0; i < n_vessels; ++i) {
        const double theta =
            kTwoPi * (static_cast<double>(i) + 0.5 * (vessel_rng.uniform01() - 0.5)) /
            static_cast<double>(n_vessels);
        const double r = params.domain * vessel_rng.uniform(0.39, 0.46);
        vessels.push_back(
            {center.x + r * std::cos(theta), center.y + r * std::sin(theta)});
    }
    for (const auto& v : vessels) b.add(v, Species::V);

    switch (regime) {
        case Regime::Equilibrium: {
            const double r_tumor = params.domain * tumor_rng.uniform(0.115, 0.13);
            const Point tc{center.x + tumor_rng.uniform(-2.0, 2.0),
                           center.y + tumor_rng.uniform(-2.0, 2.0)};
            const int n_stray = static_cast<int>(std::lround(0.05 * n_tumor));
            for (int i = 0; i < n_tumor - n_stray; ++i)
                b.add(blob_point(dom, tumor_rng, tc, 0.5 * r_tumor, r_tumor), Species::T);
            for (int i = 0; i < n_stray; ++i) {
                const Point& v = vessels[tumor_rng.below(vessels.size())];
                b.add(disk_point(dom, tumor_rng, v, 3.0), Species::T);
            }
            for (int i = 0; i < n_necrotic; ++i)
                b.add(blob_point(dom, necro_rng, tc, r_tumor / 3.0, 0.6 * r_tumor),
                      Species::N);
            const double ring_w = params.domain * 0.06;
            for (int i = 0; i < n_macro; ++i)
                add_macrophage(b,
                               annulus_point(dom, macro_rng, tc, r_tumor + 2.0,
                                             r_tumor + 2.0 + ring_w),
                               0.80, macro_rng);
            break;
        }
        case Regime::Elimination: {
            for (int i = 0; i < n_tumor; ++i)
                b.add(disk_point(dom, tumor_rng, center, 0.34 * params.domain), Species::T);
            for (int i = 0; i < n_necrotic; ++i)
                b.add(disk_point(dom, necro_rng, center, 0.32 * params.domain), Species::N);
            for (int i = 0; i < n_macro; ++i)
                add_macrophage(b, disk_point(dom, macro_rng, center, 0.30 * params.domain),
                               0.90, macro_rng);
            break;
        }
        case Regime::Escape: {
            const int n_niches = 4;
            std::vector<Point> niches;
            for (int k = 0; k < n_niches; ++k) {
                const int vi = static_cast<int>(
                    (static_cast<std::size_t>(k) * vessels.size() / n_niches +
                     tumor_rng.below(3)) %
                    vessels.size());
                const Point& v = vessels[vi];
                const double dx = center.x - v.x;
                const double dy = center.y - v.y;
                const double len = std::hypot(dx, dy);
                const double pull = tumor_rng.uniform(2.0, 4.0);
                niches.push_back({v.x + pull * dx / len, v.y + pull * dy / len});
            }
            const int n_remnant = static_cast<int>(std::lround(0.10 * n_tumor));
            for (int i = 0; i < n_tumor - n_remnant; ++i)
                b.add(blob_point(dom, tumor_rng, niches[i % n_niches], 3.0, 9.0),
                      Species::T);
            for (int i = 0; i < n_remnant; ++i)
                b.add(blob_point(dom, tumor_rng, center, params.domain * 0.04,
                                 params.domain * 0.08),
                      Species::T);
            for (int i = 0; i < n_necrotic; ++i)
                b.add(disk_point(dom, necro_rng, center, 0.12 * params.domain), Species::N);
            // M2 crowd the perivascular niches; the few M1 stay spread along
            // the vessel ring where they entered.
            for (int i = 0; i < n_macro; ++i) {
                if (macro_rng.uniform01() < 0.20) {
                    const Point& v = vessels[macro_rng.below(vessels.size())];
                    b.add(disk_point(dom, macro_rng, v, 4.0), Species::M1,
                          macro_rng.uniform(0.03, 0.47));
                } else {
                    b.add(blob_point(dom, macro_rng, niches[i % n_niches], 3.5, 10.0),
                          Species::M2, macro_rng.uniform(0.53, 0.97));
                }
            }
            break;
        }
    }

    return make_cloud(std::move(b.points), std::move(b.labels), std::move(b.omega));
}

std::vector<GridCellCloud> generate_grid(std::uint64_t master_seed, int reps,
                                         double relabel_fraction) {
    if (reps < 1) throw InvalidInputError("generate_grid: reps must be >= 1");
    std::vector<GridCellCloud> out;
    out.reserve(81 * static_cast<std::size_t>(reps));
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            const Regime designed = grid_region(i, j);
            const bool interior = grid_cell_is_interior(i, j);
            for (int rep = 0; rep < reps; ++rep) {
                const std::uint64_t tag = (static_cast<std::uint64_t>(i) << 40) |
                                          (static_cast<std::uint64_t>(j) << 32) |
                                          static_cast<std::uint64_t>(rep);
                Regime realized = designed;
                if (!interior) {
                    // The mixing band draws uniformly from the regimes seen
                    // in the cell's neighborhood, its own included.
                    std::vector<Regime> pool{designed};
                    const int di[4] = {-1, 1, 0, 0};
                    const int dj[4] = {0, 0, -1, 1};
                    for (int k = 0; k < 4; ++k) {
                        const int ni = i + di[k];
                        const int nj = j + dj[k];
                        if (ni < 0 || ni >= 9 || nj < 0 || nj >= 9) continue;
                        const Regime r = grid_region(ni, nj);
                        if (std::find(pool.begin(), pool.end(), r) == pool.end())
                            pool.push_back(r);
                    }
                    std::sort(pool.begin(), pool.end(),
                              [](Regime a, Regime b) { return static_cast<int>(a) < static_cast<int>(b); });
                    Rng mix_rng(mix_seed(master_seed, tag ^ 0xB0B0ULL));
                    realized = pool[mix_rng.below(pool.size())];
                }

                RegimeParams params;
                params.regime = realized;
                params.seed = mix_seed(master_seed, tag);
                params.vessel_seed = mix_seed(master_seed, 0x5E55ULL + rep);
                if (realized == Regime::Elimination) {
                    Rng rr(mix_seed(master_seed, tag ^ 0x77ULL));
                    params.tumor = 4 + static_cast<int>(rr.below(3));
                }

                GridCellCloud cell;
                cell.chi_idx = i;
                cell.c_half_idx = j;
                cell.rep = rep;
                cell.designed = designed;
                cell.realized = realized;
                cell.interior = interior;
                cell.cloud = generate(params);
                if (relabel_fraction > 0.0)
                    cell.cloud = relabel_noise(cell.cloud, relabel_fraction,
                                               {Species::N, Species::M1, Species::M2},
                                               mix_seed(master_seed, tag ^ 0x9E1AULL));
                out.push_back(std::move(cell));
            }
        }
    }
    return out;
}

std::vector<LabeledExample> generate_classification_corpus(std::uint64_t master_seed,
                                                           int n) {
    if (n < 1) throw InvalidInputError("classification corpus size must be >= 1");
    std::vector<LabeledExample> out;
    out.reserve(n);
    for (int idx = 0; idx < n; ++idx) {
        Rng rng(mix_seed(master_seed, 0xC1A55ULL + idx));
        const double u = rng.uniform01();
        const Regime regime = u < 0.40   ? Regime::Elimination
                              : u < 0.75 ? Regime::Equilibrium
                                         : Regime::Escape;
        RegimeParams params;
        params.regime = regime;
        params.seed = mix_seed(master_seed, 0xD000ULL + idx);
        if (regime == Regime::Elimination) params.tumor = 3 + static_cast<int>(rng.below(6));

        LabeledExample ex;
        ex.regime = regime;
        ex.seed = params.seed;
        ex.cloud = generate(params);
        ex.label = omega_majority_label(ex.cloud);
        out.push_back(std::move(ex));
    }
    return out;
}

int omega_majority_label(const LabeledPointCloud& cloud) {
    const std::size_t total = cloud.count(Species::M);
    if (total == 0)
        throw EmptySubcloudError("omega_majority_label: cloud has no macrophages");
    const std::size_t m1 = cloud.count(Species::M1);
    return 2 * m1 >= total ? 0 : 1;
}

}  // namespace relph
