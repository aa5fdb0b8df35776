#include "relph/features.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "relph/errors.hpp"

namespace relph {

DowkerDiagramSet dowker_diagrams(const LabeledPointCloud& cloud, double max_value) {
    DowkerDiagramSet set;
    for (std::size_t p = 0; p < kDowkerPairs.size(); ++p) {
        const auto [u, v] = kDowkerPairs[p];
        const auto fc = dowker_pair(cloud, u, v, max_value);
        auto dg = diagrams(fc);
        set.diagrams[2 * p] = std::move(dg.pd0);
        set.diagrams[2 * p + 1] = std::move(dg.pd1);
    }
    return set;
}

VRDiagramSet vr_diagrams(const LabeledPointCloud& cloud, double max_value) {
    VRDiagramSet set;
    const std::array<Species, 2> species{Species::T, Species::M};
    for (std::size_t s = 0; s < species.size(); ++s) {
        const auto fc = vietoris_rips(within_distances(cloud, species[s]), max_value);
        auto dg = diagrams(fc);
        set.diagrams[2 * s] = std::move(dg.pd0);
        set.diagrams[2 * s + 1] = std::move(dg.pd1);
    }
    return set;
}

namespace {

/// Range accumulator over the finite (birth, persistence) points of a family.
struct FamilyRange {
    double b_min = kInfValue, b_max = -kInfValue;
    double p_min = kInfValue, p_max = -kInfValue;
    bool any = false;

    void absorb(const PersistenceDiagram& pd) {
        for (const auto& [b, d] : pd.pairs) {
            if (std::isinf(d)) continue;
            const double p = d - b;
            b_min = std::min(b_min, b);
            b_max = std::max(b_max, b);
            p_min = std::min(p_min, p);
            p_max = std::max(p_max, p);
            any = true;
        }
    }

    ImageSpec to_spec(const ImageSpec& base) const {
        ImageSpec spec = base;
        if (!any) {
            spec.birth_min = 0.0;
            spec.birth_max = 1.0;
            spec.pers_min = 0.0;
            spec.pers_max = 1.0;
            spec.weight_scale = 0.0;
            return spec;
        }
        auto pad = [](double lo, double hi) {
            const double width = hi - lo;
            return width > 0.0 ? 0.05 * width : std::max(0.5, 0.05 * std::abs(hi));
        };
        const double bp = pad(b_min, b_max);
        const double pp = pad(p_min, p_max);
        spec.birth_min = b_min - bp;
        spec.birth_max = b_max + bp;
        spec.pers_min = p_min - pp;
        spec.pers_max = p_max + pp;
        spec.weight_scale = p_max;
        return spec;
    }
};

template <std::size_t N, typename Corpus>
std::array<ImageSpec, N> fit_specs(const Corpus& corpus, const ImageSpec& base) {
    std::array<FamilyRange, N> ranges;
    for (const auto& set : corpus)
        for (std::size_t f = 0; f < N; ++f) ranges[f].absorb(set.diagrams[f]);
    std::array<ImageSpec, N> specs;
    for (std::size_t f = 0; f < N; ++f) specs[f] = ranges[f].to_spec(base);
    return specs;
}

template <std::size_t N>
std::vector<double> concat_images(const std::array<PersistenceDiagram, N>& diagrams,
                                  const std::array<ImageSpec, N>& specs) {
    std::vector<double> out;
    for (std::size_t f = 0; f < N; ++f) {
        const auto img = persistence_image(diagrams[f], specs[f]);
        out.insert(out.end(), img.flat.begin(), img.flat.end());
    }
    return out;
}

std::vector<std::string> image_block_names(const std::vector<std::string>& blocks,
                                           const ImageSpec& base) {
    std::vector<std::string> names;
    for (const auto& block : blocks)
        for (int i = 0; i < base.rows * base.cols; ++i)
            names.push_back(block + "_px" + std::to_string(i));
    return names;
}

}  // namespace

std::array<ImageSpec, 6> fit_dowker_image_specs(const std::vector<DowkerDiagramSet>& corpus,
                                                const ImageSpec& base) {
    return fit_specs<6>(corpus, base);
}

std::array<ImageSpec, 4> fit_vr_image_specs(const std::vector<VRDiagramSet>& corpus,
                                            const ImageSpec& base) {
    return fit_specs<4>(corpus, base);
}

DowkerFeatures dowker_features(const DowkerDiagramSet& set,
                               const std::array<ImageSpec, 6>& specs) {
    return {concat_images(set.diagrams, specs)};
}

DowkerFeatures dowker_features(const LabeledPointCloud& cloud,
                               const std::array<ImageSpec, 6>& specs) {
    return dowker_features(dowker_diagrams(cloud), specs);
}

std::vector<std::string> dowker_entry_names(const ImageSpec& base) {
    return image_block_names(
        {"pi_pd0_M_V", "pi_pd1_M_V", "pi_pd0_T_V", "pi_pd1_T_V", "pi_pd0_M_T", "pi_pd1_M_T"},
        base);
}

VRFeatures vr_features(const VRDiagramSet& set, const std::array<ImageSpec, 4>& specs) {
    return {concat_images(set.diagrams, specs)};
}

std::vector<std::string> vr_entry_names(const ImageSpec& base) {
    return image_block_names({"pi_pd0_vr_T", "pi_pd1_vr_T", "pi_pd0_vr_M", "pi_pd1_vr_M"},
                             base);
}

std::vector<Species> witness_species_list(int version) {
    if (version == 1) return {Species::T, Species::N, Species::M};
    if (version == 2) return {Species::T, Species::N, Species::M1, Species::M2};
    throw InvalidInputError("witness vector version must be 1 or 2, got " +
                            std::to_string(version));
}

namespace {

using WitnessDiagrams = std::map<Species, DiagramPair>;

WitnessDiagrams witness_diagrams_for(const LabeledPointCloud& cloud,
                                     const std::vector<Species>& species) {
    const auto vessels = cloud.subcloud(Species::V);
    if (vessels.empty())
        throw EmptySubcloudError("landmark species V has no points");
    Triangulation tri;
    try {
        tri = delaunay_2d(vessels);
    } catch (const GeometryError& e) {
        throw GeometryError(std::string("degenerate landmark set V: ") + e.what());
    }

    WitnessDiagrams out;
    for (Species s : species) {
        const auto witnesses = cloud.subcloud(s);
        if (witnesses.empty())
            throw EmptySubcloudError("witness species " + to_string(s) + " has no points");
        const auto fc = witness_filtration(tri, vessels, witnesses, to_string(s));
        out[s] = diagrams(fc);
    }

    // All filtrations live on the same landmark complex, so essential counts
    // must agree across species; this keeps every distance finite.
    auto essentials = [](const PersistenceDiagram& pd) {
        std::size_t n = 0;
        for (const auto& pr : pd.pairs) n += std::isinf(pr.second) ? 1 : 0;
        return n;
    };
    const auto& first = out.begin()->second;
    for (const auto& [s, dg] : out)
        if (essentials(dg.pd0) != essentials(first.pd0) ||
            essentials(dg.pd1) != essentials(first.pd1))
            throw Error("witness filtrations disagree on essential class counts");
    return out;
}

WitnessDistanceVector assemble_witness_vector(const WitnessDiagrams& diagrams_by_species,
                                              int version) {
    const auto species = witness_species_list(version);
    WitnessDistanceVector out;
    out.version = version;
    const std::size_t m = species.size();
    for (int dim : {0, 1}) {
        auto pd = [&](std::size_t i) -> const PersistenceDiagram& {
            const auto& dg = diagrams_by_species.at(species[i]);
            return dim == 0 ? dg.pd0 : dg.pd1;
        };
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                out.values.push_back(bottleneck(pd(i), pd(j)));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                out.values.push_back(wasserstein(pd(i), pd(j), 1.0));
    }
    for (double v : out.values)
        if (!std::isfinite(v)) throw Error("witness distance vector has a non-finite entry");
    return out;
}

}  // namespace

WitnessDistanceVector witness_vector(const LabeledPointCloud& cloud, int version) {
    return assemble_witness_vector(
        witness_diagrams_for(cloud, witness_species_list(version)), version);
}

WitnessVectorPair witness_vector_versions(const LabeledPointCloud& cloud) {
    const std::vector<Species> all{Species::T, Species::N, Species::M, Species::M1,
                                   Species::M2};
    const auto diagrams_by_species = witness_diagrams_for(cloud, all);
    return {assemble_witness_vector(diagrams_by_species, 1),
            assemble_witness_vector(diagrams_by_species, 2)};
}

std::vector<std::string> witness_entry_names(int version) {
    const auto species = witness_species_list(version);
    std::vector<std::string> names;
    for (int dim : {0, 1}) {
        for (const char* metric : {"dB", "dW"})
            for (std::size_t i = 0; i < species.size(); ++i)
                for (std::size_t j = i + 1; j < species.size(); ++j)
                    names.push_back(std::string(metric) + "_pd" + std::to_string(dim) + "_" +
                                    to_string(species[i]) + "_" + to_string(species[j]));
    }
    return names;
}

SimpleDescriptor simple_descriptor(const LabeledPointCloud& cloud) {
    const auto vessels = cloud.subcloud(Species::V);
    if (vessels.empty())
        throw EmptySubcloudError("simple_descriptor needs at least one vessel point");

    auto mean_nearest = [&](Species s) {
        const auto pts = cloud.subcloud(s);
        if (pts.empty()) {
            std::cerr << "relph: warning: species " << to_string(s)
                      << " is empty; nearest-vessel distance set to 0\n";
            return 0.0;
        }
        double total = 0.0;
        for (const auto& p : pts) {
            double best = kInfValue;
            for (const auto& v : vessels) best = std::min(best, euclidean(p, v));
            total += best;
        }
        return total / static_cast<double>(pts.size());
    };

    SimpleDescriptor d;
    d.values = {static_cast<double>(cloud.count(Species::T)),
                static_cast<double>(cloud.count(Species::M)),
                static_cast<double>(cloud.count(Species::N)),
                mean_nearest(Species::T),
                mean_nearest(Species::N),
                mean_nearest(Species::M)};
    return d;
}

std::vector<std::string> simple_entry_names() {
    return {"n_T", "n_M", "n_N", "meanDistV_T", "meanDistV_N", "meanDistV_M"};
}

}  // namespace relph
