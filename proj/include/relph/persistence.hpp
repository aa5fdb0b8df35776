#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "relph/filtration.hpp"

namespace relph {

/// Z/2 boundary matrix in filtration order: column j holds the sorted
/// filtration positions of the codimension-1 faces of simplex j.
struct BoundaryMatrix {
    std::vector<std::vector<std::int32_t>> columns;
    std::vector<std::int8_t> dims;

    std::size_t size() const { return columns.size(); }
};

BoundaryMatrix boundary_matrix(const FilteredComplex& fc);

struct ReductionResult {
    BoundaryMatrix reduced;
    /// (birth position, death position), one per finite interval.
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
    /// Positions of unpaired positive simplices (essential classes), any dim.
    std::vector<std::int32_t> essential;
};

/// Left-to-right column reduction over Z/2 with the clearing optimization
/// (dimensions processed in decreasing order).
ReductionResult reduce(BoundaryMatrix bm);

struct PersistenceDiagram {
    int dim = 0;
    /// (birth, death) with death == +infinity for essential classes.
    std::vector<std::pair<double, double>> pairs;
};

struct DiagramPair {
    PersistenceDiagram pd0;
    PersistenceDiagram pd1;
};

/// Dimension-0 and dimension-1 persistence diagrams of a filtered complex.
/// Zero-persistence pairs are kept unless drop_zero is set.
DiagramPair diagrams(const FilteredComplex& fc, bool drop_zero = false);

}  // namespace relph
