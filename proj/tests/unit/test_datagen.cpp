#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "relph/datagen.hpp"
#include "relph/features.hpp"
#include "relph/persistence.hpp"

using namespace relph;

namespace {

double mean_tumor_vessel_distance(const LabeledPointCloud& cloud) {
    const auto tumor = cloud.subcloud(Species::T);
    const auto vessels = cloud.subcloud(Species::V);
    double total = 0.0;
    for (const auto& t : tumor) {
        double best = kInfValue;
        for (const auto& v : vessels) best = std::min(best, euclidean(t, v));
        total += best;
    }
    return total / static_cast<double>(tumor.size());
}

}  // namespace

TEST_CASE("elimination preset has no tumor and an M1 majority") {
    RegimeParams params;
    params.regime = Regime::Elimination;
    params.seed = 4;
    const auto cloud = generate(params);
    CHECK(cloud.count(Species::T) == 0);
    CHECK(cloud.count(Species::M1) * 2 > cloud.count(Species::M));
}

TEST_CASE("escape tumor sits closer to vessels than equilibrium tumor") {
    double escape_total = 0.0, equilibrium_total = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RegimeParams params;
        params.seed = seed;
        params.tumor = 150;
        params.necrotic = 60;
        params.macrophages = 160;
        params.regime = Regime::Escape;
        escape_total += mean_tumor_vessel_distance(generate(params));
        params.regime = Regime::Equilibrium;
        equilibrium_total += mean_tumor_vessel_distance(generate(params));
    }
    CHECK(escape_total < equilibrium_total);
}

TEST_CASE("equilibrium macrophage annulus carries a persistent 1-cycle") {
    RegimeParams params;
    params.regime = Regime::Equilibrium;
    params.seed = 12;
    const auto cloud = generate(params);
    const auto dist = within_distances(cloud, Species::M);
    const auto dg = diagrams(vietoris_rips(dist, kInfValue));
    const double ring_width = params.domain * 0.08;
    double best = 0.0;
    for (const auto& [b, d] : dg.pd1.pairs)
        if (!std::isinf(d)) best = std::max(best, d - b);
    CHECK(best > ring_width);
}

TEST_CASE("vessel layout depends only on the vessel seed") {
    RegimeParams params;
    params.seed = 7;
    params.vessel_seed = 99;
    params.regime = Regime::Equilibrium;
    const auto a = generate(params).subcloud(Species::V);
    params.regime = Regime::Escape;
    params.seed = 8;  // different species randomness, same vessels
    const auto b = generate(params).subcloud(Species::V);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("all generated points stay inside the domain") {
    for (Regime regime : {Regime::Elimination, Regime::Equilibrium, Regime::Escape}) {
        RegimeParams params;
        params.regime = regime;
        params.seed = 5;
        params.domain = 80.0;
        const auto cloud = generate(params);
        for (const auto& p : cloud.points) {
            CHECK(p.x >= 0.0);
            CHECK(p.x <= 80.0);
            CHECK(p.y >= 0.0);
            CHECK(p.y <= 80.0);
        }
    }
}

TEST_CASE("generate validates its inputs") {
    RegimeParams params;
    CHECK_THROWS_AS(generate(params), InvalidInputError);  // no regime, no knobs
    params.regime = Regime::Escape;
    params.tumor = -5;
    CHECK_THROWS_AS(generate(params), InvalidInputError);
}

TEST_CASE("knob map splits the grid into the documented regions") {
    CHECK(regime_for_knobs(0.5, 0.1) == Regime::Equilibrium);
    CHECK(regime_for_knobs(1.5, 0.9) == Regime::Equilibrium);
    CHECK(regime_for_knobs(3.0, 0.2) == Regime::Elimination);
    CHECK(regime_for_knobs(4.5, 0.9) == Regime::Escape);

    int interior = 0;
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) interior += grid_cell_is_interior(i, j);
    CHECK(interior == 53);
    CHECK(grid_cell_is_interior(0, 0));
    CHECK_FALSE(grid_cell_is_interior(2, 5));
    CHECK_FALSE(grid_cell_is_interior(4, 3));
}

TEST_CASE("grid generation is deterministic and carries residual tumor") {
    const auto grid = generate_grid(31, 2);
    CHECK(grid.size() == 81 * 2);
    for (const auto& cell : grid) {
        if (cell.interior) CHECK(cell.designed == cell.realized);
        if (cell.realized == Regime::Elimination) {
            CHECK(cell.cloud.count(Species::T) >= 3);
            CHECK(cell.cloud.count(Species::T) <= 8);
        }
        CHECK(cell.cloud.count(Species::V) >= 3);
    }
    const auto again = generate_grid(31, 2);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(grid[i].realized == again[i].realized);
        CHECK(grid[i].cloud.points == again[i].cloud.points);
    }

    // vessels identical across cells within one realization
    const auto& first = grid[0];
    for (const auto& cell : grid)
        if (cell.rep == first.rep)
            CHECK(cell.cloud.subcloud(Species::V) == first.cloud.subcloud(Species::V));
}

TEST_CASE("relabeled grid keeps point counts") {
    const auto clean = generate_grid(8, 1);
    const auto noisy = generate_grid(8, 1, 0.5);
    REQUIRE(clean.size() == noisy.size());
    for (std::size_t i = 0; i < clean.size(); ++i) {
        CHECK(clean[i].cloud.size() == noisy[i].cloud.size());
        CHECK(clean[i].cloud.count(Species::T) == noisy[i].cloud.count(Species::T));
        CHECK(clean[i].cloud.points == noisy[i].cloud.points);
    }
}

TEST_CASE("classification corpus labels follow the regime") {
    const auto corpus = generate_classification_corpus(5, 60);
    CHECK(corpus.size() == 60);
    std::map<Regime, int> counts;
    for (const auto& ex : corpus) {
        ++counts[ex.regime];
        CHECK(ex.label == (ex.regime == Regime::Escape ? 1 : 0));
        CHECK(ex.label == omega_majority_label(ex.cloud));
        CHECK(ex.cloud.count(Species::T) >= 3);
    }
    CHECK(counts[Regime::Escape] > 5);
    CHECK(counts[Regime::Elimination] > 10);
    CHECK(counts[Regime::Equilibrium] > 10);
}
