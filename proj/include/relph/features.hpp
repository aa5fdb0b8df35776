#pragma once

#include <array>
#include <string>
#include <vector>

#include "relph/diagram_distance.hpp"
#include "relph/filtration.hpp"
#include "relph/persistence.hpp"
#include "relph/persistence_image.hpp"

namespace relph {

/// Dowker pairs in fixed feature-block order: (M,V), (T,V), (M,T).
inline constexpr std::array<std::pair<Species, Species>, 3> kDowkerPairs{
    {{Species::M, Species::V}, {Species::T, Species::V}, {Species::M, Species::T}}};

/// The six Dowker diagrams of a cloud, indexed 2*pair + dim:
/// pd0(M,V), pd1(M,V), pd0(T,V), pd1(T,V), pd0(M,T), pd1(M,T).
struct DowkerDiagramSet {
    std::array<PersistenceDiagram, 6> diagrams;
};

DowkerDiagramSet dowker_diagrams(const LabeledPointCloud& cloud,
                                 double max_value = kInfValue);

/// The four Vietoris-Rips diagrams: pd0(T), pd1(T), pd0(M), pd1(M).
struct VRDiagramSet {
    std::array<PersistenceDiagram, 4> diagrams;
};

VRDiagramSet vr_diagrams(const LabeledPointCloud& cloud, double max_value = kInfValue);

/// Fit per-family image ranges over a corpus: min/max of births and
/// persistences padded by 5%, weight_scale = max persistence. Families with
/// no finite off-diagonal points get a unit default range.
std::array<ImageSpec, 6> fit_dowker_image_specs(const std::vector<DowkerDiagramSet>& corpus,
                                                const ImageSpec& base);
std::array<ImageSpec, 4> fit_vr_image_specs(const std::vector<VRDiagramSet>& corpus,
                                            const ImageSpec& base);

/// 2400-dim concatenation of the six Dowker persistence images.
struct DowkerFeatures {
    std::vector<double> values;
};

DowkerFeatures dowker_features(const DowkerDiagramSet& set,
                               const std::array<ImageSpec, 6>& specs);
DowkerFeatures dowker_features(const LabeledPointCloud& cloud,
                               const std::array<ImageSpec, 6>& specs);
std::vector<std::string> dowker_entry_names(const ImageSpec& base);

/// 1600-dim concatenation of the four Vietoris-Rips persistence images.
struct VRFeatures {
    std::vector<double> values;
};

VRFeatures vr_features(const VRDiagramSet& set, const std::array<ImageSpec, 4>& specs);
std::vector<std::string> vr_entry_names(const ImageSpec& base);

/// Pairwise bottleneck and 1-Wasserstein distances between the witness
/// filtrations of a cloud; 12 entries for version 1 (T, N, M witnesses) and
/// 24 for version 2 (T, N, M1, M2). Layout: all d_B in dimension 0, all d_W
/// in dimension 0, then the same for dimension 1; species pairs in
/// lexicographic order of the version's species list.
struct WitnessDistanceVector {
    int version = 1;
    std::vector<double> values;
};

WitnessDistanceVector witness_vector(const LabeledPointCloud& cloud, int version);
std::vector<std::string> witness_entry_names(int version);
std::vector<Species> witness_species_list(int version);

struct WitnessVectorPair {
    WitnessDistanceVector v1;
    WitnessDistanceVector v2;
};

/// Both witness vectors of a cloud, sharing the T and N filtrations.
WitnessVectorPair witness_vector_versions(const LabeledPointCloud& cloud);

/// Six non-topological reference features: counts of T, M, N points and the
/// mean nearest-vessel distance of T, N, M points (0 with a warning when a
/// species is absent).
struct SimpleDescriptor {
    std::vector<double> values;
};

SimpleDescriptor simple_descriptor(const LabeledPointCloud& cloud);
std::vector<std::string> simple_entry_names();

}  // namespace relph
