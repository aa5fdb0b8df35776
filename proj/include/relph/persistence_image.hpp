#pragma once

#include <string>
#include <vector>

#include "relph/persistence.hpp"

namespace relph {

/// Discretization parameters for persistence images. Ranges are fixed per
/// diagram family (fit over a corpus) so that images of different clouds are
/// comparable; weight_scale is the corpus maximum persistence p_max used by
/// the linear weight w(p) = min(p / p_max, 1), which vanishes on the
/// diagonal as required.
struct ImageSpec {
    int rows = 20;
    int cols = 20;
    double sigma = 1.0;
    double birth_min = 0.0;
    double birth_max = 1.0;
    double pers_min = 0.0;
    double pers_max = 1.0;
    double weight_scale = 1.0;
    std::string weight = "linear-in-persistence";

    /// Throws InvalidInputError on nonpositive resolution or sigma, empty
    /// ranges, negative weight_scale, or an unknown weight tag.
    void validate() const;
};

struct PersistenceImage {
    int rows = 0;
    int cols = 0;
    std::vector<double> flat;  // row-major; row = persistence bin, col = birth bin
    int dropped_infinite = 0;  // essential pairs excluded from the image

    double at(int r, int c) const { return flat[static_cast<std::size_t>(r) * cols + c]; }
    double sum() const;
};

/// Weighted-Gaussian persistence image of the finite part of a diagram.
/// Each pair (b, d) maps to (b, d - b); its contribution to a pixel is the
/// exact integral of the weighted isotropic Gaussian over the pixel
/// rectangle (product of 1D normal CDF differences).
PersistenceImage persistence_image(const PersistenceDiagram& pd, const ImageSpec& spec);

}  // namespace relph
