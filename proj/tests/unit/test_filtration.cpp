#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "relph/errors.hpp"
#include "relph/filtration.hpp"
#include "relph/persistence.hpp"
#include "relph/random.hpp"

using namespace relph;

namespace {

std::map<Simplex, double> value_map(const FilteredComplex& fc) {
    std::map<Simplex, double> m;
    for (const auto& fs : fc.simplices) m[fs.simplex] = fs.value;
    return m;
}

DistanceMatrix matrix(std::size_t r, std::size_t c, std::vector<double> values) {
    DistanceMatrix m;
    m.rows = r;
    m.cols = c;
    m.values = std::move(values);
    return m;
}

}  // namespace

TEST_CASE("vietoris_rips on an equilateral triangle") {
    const auto fc = vietoris_rips(matrix(3, 3, {0, 1, 1, 1, 0, 1, 1, 1, 0}), 2.0);
    check_filtered_complex(fc);
    const auto values = value_map(fc);
    CHECK(values.size() == 7);
    CHECK(values.at(Simplex::vertex(0)) == 0.0);
    CHECK(values.at(Simplex::edge(0, 1)) == 1.0);
    CHECK(values.at(Simplex::triangle(0, 1, 2)) == 1.0);
}

TEST_CASE("vietoris_rips respects the threshold") {
    const auto fc = vietoris_rips(matrix(2, 2, {0, 3, 3, 0}), 2.0);
    CHECK(fc.size() == 2);  // two vertices, no edge
}

TEST_CASE("vietoris_rips on unit-square corners") {
    const double s = std::sqrt(2.0);
    const std::vector<Point> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const auto fc = vietoris_rips(pairwise_distances(sq), 2.0);
    check_filtered_complex(fc);
    const auto values = value_map(fc);
    // hand count: 4 side edges at 1, both diagonals at sqrt2, 4 triangles at sqrt2
    int edges_at_1 = 0, edges_at_s = 0, tris_at_s = 0;
    for (const auto& [simplex, v] : values) {
        if (simplex.dim == 1 && v == 1.0) ++edges_at_1;
        if (simplex.dim == 1 && v == s) ++edges_at_s;
        if (simplex.dim == 2) {
            CHECK(v == s);
            ++tris_at_s;
        }
    }
    CHECK(edges_at_1 == 4);
    CHECK(edges_at_s == 2);
    CHECK(tris_at_s == 4);
}

TEST_CASE("vietoris_rips rejects asymmetric input") {
    CHECK_THROWS_AS(vietoris_rips(matrix(2, 2, {0, 1, 2, 0}), 10.0), InvalidInputError);
}

TEST_CASE("vietoris_rips sublevel sets are nested") {
    Rng rng(5);
    std::vector<Point> pts;
    for (int i = 0; i < 9; ++i) pts.push_back({rng.uniform(0, 10), rng.uniform(0, 10)});
    const auto dist = pairwise_distances(pts);
    const double e1 = 4.0, e2 = 7.0;
    const auto small = vietoris_rips(dist, e1);
    const auto large = vietoris_rips(dist, e2);
    const auto big_values = value_map(large);
    for (const auto& fs : small.simplices) {
        REQUIRE(big_values.count(fs.simplex) == 1);
        CHECK(big_values.at(fs.simplex) == fs.value);
    }
    for (const auto& fs : large.simplices)
        if (fs.value <= e1) CHECK(value_map(small).count(fs.simplex) == 1);
}

TEST_CASE("dowker two rows one witness column") {
    const auto fc = dowker(matrix(2, 1, {1, 2}), 3.0);
    check_filtered_complex(fc);
    const auto values = value_map(fc);
    CHECK(values.at(Simplex::vertex(0)) == 1.0);
    CHECK(values.at(Simplex::vertex(1)) == 2.0);
    CHECK(values.at(Simplex::edge(0, 1)) == 2.0);
}

TEST_CASE("dowker on an all-zero matrix puts everything at 0") {
    const auto fc = dowker(matrix(3, 2, {0, 0, 0, 0, 0, 0}));
    for (const auto& fs : fc.simplices) CHECK(fs.value == 0.0);
    CHECK(fc.size() == 7);
}

TEST_CASE("dowker square corners with one central witness") {
    // Four row points at unit-square corners, one witness in the middle:
    // every simplex appears at sqrt(2)/2 and no 1-cycle ever exists.
    const std::vector<Point> corners{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const std::vector<Point> center{{0.5, 0.5}};
    const auto fc = dowker(pairwise_distances(corners, center));
    const double r = std::sqrt(0.5);
    for (const auto& fs : fc.simplices) CHECK(fs.value == doctest::Approx(r).epsilon(1e-12));
    const auto dg = diagrams(fc, /*drop_zero=*/true);
    CHECK(dg.pd1.pairs.empty());
}

TEST_CASE("dowker rejects an empty matrix") {
    CHECK_THROWS_AS(dowker(matrix(0, 0, {})), InvalidInputError);
}

TEST_CASE("dowker value formula matches a naive recomputation") {
    Rng rng(123);
    for (int trial = 0; trial < 5; ++trial) {
        DistanceMatrix cross;
        cross.rows = cross.cols = 10;
        for (int i = 0; i < 100; ++i) cross.values.push_back(rng.uniform(0, 5));
        const auto fc = dowker(cross);
        check_filtered_complex(fc);
        for (const auto& fs : fc.simplices) {
            double expect = kInfValue;
            for (std::size_t v = 0; v < cross.cols; ++v) {
                double worst = 0.0;
                for (int d = 0; d <= fs.simplex.dim; ++d)
                    worst = std::max(worst, cross.at(fs.simplex.v[d], v));
                expect = std::min(expect, worst);
            }
            CHECK(fs.value == expect);
        }
    }
}

TEST_CASE("witness_counts ties and vacuous quantifier") {
    // Landmarks at an equilateral-ish triangle; Delaunay is one triangle.
    const std::vector<Point> landmarks{{0, 0}, {4, 0}, {2, 3}};
    const auto tri = delaunay_2d(landmarks);

    SUBCASE("witness on a landmark") {
        const auto counts = witness_counts(tri, landmarks, {{0, 0}});
        CHECK(counts.at(Simplex::vertex(0)) == 1);
        CHECK(counts.at(Simplex::vertex(1)) == 0);
        CHECK(counts.at(Simplex::vertex(2)) == 0);
        // the full triangle has no excluded landmark, so it is witnessed too
        CHECK(counts.at(Simplex::triangle(0, 1, 2)) == 1);
    }

    SUBCASE("witness equidistant from an edge's endpoints") {
        // (2, 0) is at distance 2 from both base landmarks and sqrt(13) > 2
        // from the apex: it witnesses the base edge and both endpoints.
        const auto counts = witness_counts(tri, landmarks, {{2, 0}});
        CHECK(counts.at(Simplex::vertex(0)) == 1);
        CHECK(counts.at(Simplex::vertex(1)) == 1);
        CHECK(counts.at(Simplex::edge(0, 1)) == 1);
        CHECK(counts.at(Simplex::vertex(2)) == 0);
        CHECK(counts.at(Simplex::edge(0, 2)) == 0);
        CHECK(counts.at(Simplex::triangle(0, 1, 2)) == 1);
    }

    SUBCASE("centroid witnesses everything on an exactly equilateral triangle") {
        const double h = std::sqrt(3.0);
        const std::vector<Point> eq{{-1, 0}, {1, 0}, {0, h}};
        const auto eq_tri = delaunay_2d(eq);
        const auto counts = witness_counts(eq_tri, eq, {{0, h / 3.0}});
        for (const auto& [simplex, count] : counts) CHECK(count == 1);
    }

    SUBCASE("no witnesses gives all-zero counts") {
        const auto counts = witness_counts(tri, landmarks, {});
        for (const auto& [simplex, count] : counts) CHECK(count == 0);
    }
}

TEST_CASE("witness_filtration values and face propagation") {
    // Unit-square landmarks; tie-break makes the triangles (0,1,2) and
    // (0,2,3). Witnesses are placed to give known counts.
    const std::vector<Point> landmarks{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const auto tri = delaunay_2d(landmarks);

    // (0.72, 0.31): distance order L1 (.4177), L2 (.7446), L0 (.7839),
    // L3 (.9972) -> witnesses vertex 1, edge (1,2), triangle (0,1,2).
    // (0.05, 0.05): L0 .0707, then L1 == L3 at .9513, L2 1.3435 -> witnesses
    // vertex 0 and, through the exact d(L1) == d(L3) tie, edges (0,1) and
    // (0,3).
    const std::vector<Point> witnesses{{0.72, 0.31}, {0.05, 0.05}};
    const auto counts = witness_counts(tri, landmarks, witnesses);
    CHECK(counts.at(Simplex::vertex(0)) == 1);
    CHECK(counts.at(Simplex::vertex(1)) == 1);
    CHECK(counts.at(Simplex::vertex(2)) == 0);
    CHECK(counts.at(Simplex::vertex(3)) == 0);
    CHECK(counts.at(Simplex::edge(0, 1)) == 1);  // tie counts as witnessing
    CHECK(counts.at(Simplex::edge(0, 3)) == 1);
    CHECK(counts.at(Simplex::edge(1, 2)) == 1);
    CHECK(counts.at(Simplex::edge(0, 2)) == 0);
    CHECK(counts.at(Simplex::edge(2, 3)) == 0);
    CHECK(counts.at(Simplex::triangle(0, 1, 2)) == 1);
    CHECK(counts.at(Simplex::triangle(0, 2, 3)) == 0);

    const auto fc = witness_filtration(tri, landmarks, witnesses, "T");
    check_filtered_complex(fc);
    const auto values = value_map(fc);
    // mu_max = 1: witnessed simplices at 0, unwitnessed at 1 unless a coface
    // drags them down.
    CHECK(values.at(Simplex::triangle(0, 1, 2)) == 0.0);
    CHECK(values.at(Simplex::triangle(0, 2, 3)) == 1.0);
    CHECK(values.at(Simplex::edge(0, 2)) == 0.0);   // face of the witnessed triangle
    CHECK(values.at(Simplex::vertex(2)) == 0.0);
    CHECK(values.at(Simplex::vertex(3)) == 0.0);    // dragged down by edge (0,3)
    CHECK(values.at(Simplex::edge(2, 3)) == 1.0);   // its only coface stays at 1

    for (const auto& [simplex, v] : values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("witness_filtration errors when nothing is witnessed") {
    // With no witness points at all, mu_max is 0.
    const std::vector<Point> landmarks{{0, 0}, {4, 0}, {2, 3}};
    const auto tri = delaunay_2d(landmarks);
    CHECK_THROWS_WITH_AS(witness_filtration(tri, landmarks, {}, "N"),
                         doctest::Contains("N"), ZeroWitnessError);
}

TEST_CASE("witness_filtration invariants on random scenes") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Point> landmarks;
        const int nl = 5 + static_cast<int>(rng.below(10));
        for (int i = 0; i < nl; ++i)
            landmarks.push_back({rng.uniform(0, 20), rng.uniform(0, 20)});
        std::vector<Point> witnesses;
        const int nw = 1 + static_cast<int>(rng.below(30));
        for (int i = 0; i < nw; ++i)
            witnesses.push_back({rng.uniform(0, 20), rng.uniform(0, 20)});
        const auto tri = delaunay_2d(landmarks);
        const auto fc = witness_filtration(tri, landmarks, witnesses, "w");
        check_filtered_complex(fc);  // includes face monotonicity
        double min_v = 1.0;
        for (const auto& fs : fc.simplices) {
            CHECK(fs.value >= 0.0);
            CHECK(fs.value <= 1.0);
            min_v = std::min(min_v, fs.value);
        }
        CHECK(min_v == 0.0);
    }
}

TEST_CASE("dowker_pair orients the smaller subcloud as the vertex set") {
    std::vector<Point> pts;
    std::vector<Species> labels;
    for (int i = 0; i < 10; ++i) {
        pts.push_back({static_cast<double>(i), 0.0});
        labels.push_back(Species::T);
    }
    for (int i = 0; i < 3; ++i) {
        pts.push_back({static_cast<double>(i), 5.0});
        labels.push_back(Species::V);
    }
    auto cloud = make_cloud(pts, labels);
    const auto fc = dowker_pair(cloud, Species::T, Species::V);
    int vertices = 0;
    for (const auto& fs : fc.simplices) vertices += fs.simplex.dim == 0;
    CHECK(vertices == 3);  // V is smaller, so rows are vessels

    // tie goes to the first species
    auto tie = make_cloud({{0, 0}, {1, 0}, {0, 5}, {1, 7}},
                          {Species::T, Species::T, Species::V, Species::V});
    const auto fc_tie = dowker_pair(tie, Species::T, Species::V);
    // vertex births are min cross distances from T rows
    const auto values = value_map(fc_tie);
    CHECK(values.at(Simplex::vertex(0)) == 5.0);  // T0 to V0

    auto empty = make_cloud({{0, 0}}, {Species::V});
    CHECK_THROWS_WITH_AS(dowker_pair(empty, Species::M, Species::V),
                         doctest::Contains("M"), EmptySubcloudError);
}
