#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "relph/errors.hpp"

namespace relph {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline bool operator==(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y;
}

double euclidean(const Point& a, const Point& b);

/// Species tags carried by points of a labeled cloud.
enum class Species { V, T, N, M, M1, M2, S };

std::string to_string(Species s);
Species species_from_string(const std::string& s);

/// A 2D point cloud where every point carries exactly one species label.
/// Macrophages (M, M1, M2) may carry a phenotype value omega in [0, 1];
/// for all other species omega is stored as NaN.
///
/// Species queries treat M as the union of M, M1 and M2. Conversely, M1 and
/// M2 queries pick up points labeled plain M using the omega < 0.5 phenotype
/// split, so clouds are usable whether or not the source data distinguishes
/// macrophage subtypes.
struct LabeledPointCloud {
    std::vector<Point> points;
    std::vector<Species> labels;
    std::vector<double> omega;

    /// Throws InvalidInputError if any invariant is violated: mismatched
    /// lengths, omega on a non-macrophage, omega outside [0, 1], or duplicate
    /// positions within one species subcloud.
    void validate() const;

    std::vector<std::size_t> subcloud_indices(Species s) const;
    std::vector<Point> subcloud(Species s) const;
    std::size_t count(Species s) const;

    std::size_t size() const { return points.size(); }
};

LabeledPointCloud make_cloud(std::vector<Point> points, std::vector<Species> labels,
                             std::vector<double> omega = {});

struct DistanceMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;  // row-major

    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }

    DistanceMatrix transposed() const;
    bool is_symmetric() const;
};

/// Pairwise Euclidean distances on one species subcloud.
DistanceMatrix within_distances(const LabeledPointCloud& cloud, Species s);

/// |U| x |V| Euclidean distances between two distinct species subclouds.
DistanceMatrix cross_distances(const LabeledPointCloud& cloud, Species u, Species v);

DistanceMatrix pairwise_distances(const std::vector<Point>& pts);
DistanceMatrix pairwise_distances(const std::vector<Point>& us, const std::vector<Point>& vs);

struct Triangulation {
    std::vector<int> vertices;                 // 0..n-1 into the input point list
    std::vector<std::array<int, 3>> triangles; // vertex triples, each sorted ascending
    std::vector<std::array<int, 2>> edges;     // derived from triangles, deduplicated
};

/// 2D Delaunay triangulation via Bowyer-Watson. Requires >= 3 pairwise
/// distinct, not-all-collinear points. Cocircular ties are resolved by
/// flipping toward the lexicographically smallest diagonal index pair, making
/// the output deterministic for a fixed input order.
Triangulation delaunay_2d(const std::vector<Point>& pts);

/// Signed in-circle determinant normalized to [-1, 1] (Hadamard bound).
/// Positive when d lies strictly inside the circumcircle of (a, b, c),
/// independent of the triangle's orientation.
double incircle_normalized(const Point& a, const Point& b, const Point& c, const Point& d);

/// Indices of the convex hull in counterclockwise order (monotone chain).
std::vector<int> convex_hull(const std::vector<Point>& pts);

double polygon_area(const std::vector<Point>& pts, const std::vector<int>& ring);
double triangle_area(const Point& a, const Point& b, const Point& c);

}  // namespace relph
