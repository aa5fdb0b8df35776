#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "relph/geometry.hpp"

namespace relph {

constexpr double kInfValue = std::numeric_limits<double>::infinity();

/// A simplex of dimension <= 2, stored as a strictly increasing vertex tuple.
struct Simplex {
    std::array<int, 3> v{-1, -1, -1};
    int dim = 0;

    static Simplex vertex(int a);
    static Simplex edge(int a, int b);
    static Simplex triangle(int a, int b, int c);

    /// Packed key usable for sorting and hashing; vertex indices must fit in
    /// 21 bits (plenty for desk-scale clouds).
    std::uint64_t key() const {
        const std::uint64_t a = static_cast<std::uint64_t>(v[0] + 1);
        const std::uint64_t b = static_cast<std::uint64_t>(v[1] + 1);
        const std::uint64_t c = static_cast<std::uint64_t>(v[2] + 1);
        return (a << 42) | (b << 21) | c;
    }

    bool operator==(const Simplex& o) const { return v == o.v; }
    bool operator<(const Simplex& o) const { return key() < o.key(); }

    /// The dim+1 faces of codimension 1 (empty for vertices).
    std::vector<Simplex> facets() const;
};

struct FilteredSimplex {
    Simplex simplex;
    double value = 0.0;
};

/// Simplices with filtration values, kept sorted by (value, dim, vertex
/// tuple) so faces always precede cofaces.
struct FilteredComplex {
    std::vector<FilteredSimplex> simplices;

    void sort_canonical();
    std::size_t size() const { return simplices.size(); }
};

/// Exhaustive invariant check: closure under faces, face monotonicity and
/// canonical ordering. Throws InvalidInputError on violation. Intended for
/// tests and debugging; construction functions already guarantee these.
void check_filtered_complex(const FilteredComplex& fc);

/// Vietoris-Rips filtration of a symmetric distance matrix, truncated at
/// dimension 2. Vertices enter at 0, edges at their distance, triangles at
/// the maximum of their edges; simplices above max_value are omitted.
FilteredComplex vietoris_rips(const DistanceMatrix& dist, double max_value = kInfValue);

/// Dowker filtration over the row set of a cross-distance matrix. A simplex
/// sigma enters at min over columns v of max over i in sigma of cross(i, v);
/// in particular vertices are born at the minimum of their row, not at 0.
FilteredComplex dowker(const DistanceMatrix& cross, double max_value = kInfValue);

/// Dowker filtration for a species pair, orienting the smaller subcloud as
/// the vertex set (ties go to species u).
FilteredComplex dowker_pair(const LabeledPointCloud& cloud, Species u, Species v,
                            double max_value = kInfValue);

/// Number of witnesses for every simplex of the landmark triangulation. A
/// point p witnesses sigma when max_{l in sigma} d(p,l) <= min over the
/// remaining landmarks; ties count, and the condition is vacuously true when
/// sigma contains every landmark.
std::map<Simplex, int> witness_counts(const Triangulation& landmark_tri,
                                      const std::vector<Point>& landmarks,
                                      const std::vector<Point>& witnesses);

/// Multispecies witness filtration of the landmark triangulation: raw values
/// (mu_max - mu) / mu_max, then each simplex is lowered to the minimum over
/// its cofaces so that faces enter together with the simplices they bound.
/// Throws ZeroWitnessError (mentioning `witness_name`) when no simplex has a
/// witness.
FilteredComplex witness_filtration(const Triangulation& landmark_tri,
                                   const std::vector<Point>& landmarks,
                                   const std::vector<Point>& witnesses,
                                   const std::string& witness_name = "witnesses");

}  // namespace relph
