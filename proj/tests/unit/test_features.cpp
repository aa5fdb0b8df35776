#include <cmath>

#include "doctest.h"
#include "relph/datagen.hpp"
#include "relph/errors.hpp"
#include "relph/features.hpp"
#include "relph/random.hpp"

using namespace relph;

namespace {

/// Small mixed cloud with every species the pipelines need.
LabeledPointCloud sample_cloud(std::uint64_t seed = 3) {
    RegimeParams params;
    params.regime = Regime::Escape;
    params.seed = seed;
    params.vessels = 12;
    params.tumor = 25;
    params.necrotic = 15;
    params.macrophages = 30;
    return generate(params);
}

}  // namespace

TEST_CASE("feature vector lengths are pinned") {
    const auto cloud = sample_cloud();

    const std::vector<DowkerDiagramSet> dcorpus{dowker_diagrams(cloud)};
    const auto dspecs = fit_dowker_image_specs(dcorpus, ImageSpec{});
    CHECK(dowker_features(dcorpus[0], dspecs).values.size() == 2400);
    CHECK(dowker_entry_names(ImageSpec{}).size() == 2400);

    const std::vector<VRDiagramSet> vcorpus{vr_diagrams(cloud, 60.0)};
    const auto vspecs = fit_vr_image_specs(vcorpus, ImageSpec{});
    CHECK(vr_features(vcorpus[0], vspecs).values.size() == 1600);
    CHECK(vr_entry_names(ImageSpec{}).size() == 1600);

    CHECK(witness_vector(cloud, 1).values.size() == 12);
    CHECK(witness_vector(cloud, 2).values.size() == 24);
    CHECK(witness_entry_names(1).size() == 12);
    CHECK(witness_entry_names(2).size() == 24);
    CHECK_THROWS_AS(witness_vector(cloud, 3), InvalidInputError);

    CHECK(simple_descriptor(cloud).values.size() == 6);
    CHECK(simple_entry_names().size() == 6);
}

TEST_CASE("coincident species sites give zero Dowker births") {
    // one V, one T, one M at each of three sites
    std::vector<Point> pts;
    std::vector<Species> labels;
    std::vector<double> omega;
    const std::vector<Point> sites{{0, 0}, {10, 0}, {0, 10}};
    for (const auto& site : sites) {
        pts.push_back(site);
        labels.push_back(Species::V);
        omega.push_back(std::numeric_limits<double>::quiet_NaN());
        pts.push_back(site);
        labels.push_back(Species::T);
        omega.push_back(std::numeric_limits<double>::quiet_NaN());
        pts.push_back(site);
        labels.push_back(Species::M1);
        omega.push_back(0.2);
    }
    const auto cloud = make_cloud(pts, labels, omega);
    const auto sets = dowker_diagrams(cloud);
    for (int family = 0; family < 6; family += 2)  // the three pd0 families
        for (const auto& [b, d] : sets.diagrams[family].pairs) CHECK(b == 0.0);
}

TEST_CASE("witness vector entries for identical witness sets vanish") {
    std::vector<Point> pts;
    std::vector<Species> labels;
    std::vector<double> omega;
    Rng rng(8);
    for (int i = 0; i < 10; ++i) {
        pts.push_back({rng.uniform(0, 40), rng.uniform(0, 40)});
        labels.push_back(Species::V);
        omega.push_back(std::numeric_limits<double>::quiet_NaN());
    }
    // T and N occupy identical positions; M elsewhere
    for (int i = 0; i < 8; ++i) {
        const Point p{rng.uniform(10, 30), rng.uniform(10, 30)};
        pts.push_back(p);
        labels.push_back(Species::T);
        omega.push_back(std::numeric_limits<double>::quiet_NaN());
        pts.push_back(p);
        labels.push_back(Species::N);
        omega.push_back(std::numeric_limits<double>::quiet_NaN());
        pts.push_back({rng.uniform(0, 40), rng.uniform(0, 40)});
        labels.push_back(Species::M1);
        omega.push_back(0.1);
    }
    const auto cloud = make_cloud(pts, labels, omega);
    const auto wv = witness_vector(cloud, 1);
    const auto names = witness_entry_names(1);
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i].find("_T_N") != std::string::npos) CHECK(wv.values[i] == 0.0);
}

TEST_CASE("witness vector is symmetric under species relabeling") {
    auto cloud = sample_cloud(17);
    const auto base = witness_vector(cloud, 1);
    const auto names = witness_entry_names(1);

    // swap the T and N labels wholesale
    auto swapped = cloud;
    for (auto& label : swapped.labels) {
        if (label == Species::T) label = Species::N;
        else if (label == Species::N) label = Species::T;
    }
    const auto flipped = witness_vector(swapped, 1);

    auto index_of = [&](const std::string& name) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        REQUIRE(false);
        return std::size_t{0};
    };
    for (int dim : {0, 1}) {
        const std::string d = std::to_string(dim);
        for (const std::string metric : {"dB", "dW"}) {
            // T-N entry is invariant; T-M and N-M swap
            CHECK(base.values[index_of(metric + "_pd" + d + "_T_N")] ==
                  flipped.values[index_of(metric + "_pd" + d + "_T_N")]);
            CHECK(base.values[index_of(metric + "_pd" + d + "_T_M")] ==
                  flipped.values[index_of(metric + "_pd" + d + "_N_M")]);
            CHECK(base.values[index_of(metric + "_pd" + d + "_N_M")] ==
                  flipped.values[index_of(metric + "_pd" + d + "_T_M")]);
        }
    }
}

TEST_CASE("features are invariant under rigid motions") {
    const auto cloud = sample_cloud(23);
    const double c = std::cos(1.1), s = std::sin(1.1);
    auto moved = cloud;
    for (auto& p : moved.points)
        p = {c * p.x - s * p.y + 31.0, s * p.x + c * p.y + 7.0};

    const auto wa = witness_vector(cloud, 2);
    const auto wb = witness_vector(moved, 2);
    for (std::size_t i = 0; i < wa.values.size(); ++i)
        CHECK(wa.values[i] == doctest::Approx(wb.values[i]).epsilon(1e-9));

    const auto sa = simple_descriptor(cloud);
    const auto sb = simple_descriptor(moved);
    for (std::size_t i = 0; i < sa.values.size(); ++i)
        CHECK(sa.values[i] == doctest::Approx(sb.values[i]).epsilon(1e-9));
}

TEST_CASE("witness vector reports missing species by name") {
    std::vector<Point> pts{{0, 0}, {10, 0}, {5, 8}, {5, 3}};
    std::vector<Species> labels{Species::V, Species::V, Species::V, Species::T};
    const auto cloud = make_cloud(pts, labels);
    CHECK_THROWS_WITH_AS(witness_vector(cloud, 1), doctest::Contains("N"),
                         EmptySubcloudError);
}

TEST_CASE("simple descriptor values") {
    // five tumor points, each at distance 2 from the single vessel
    std::vector<Point> pts{{0, 0}};
    std::vector<Species> labels{Species::V};
    std::vector<double> omega{std::numeric_limits<double>::quiet_NaN()};
    for (int i = 0; i < 5; ++i) {
        const double a = 2.0 * M_PI * i / 5.0;
        pts.push_back({2.0 * std::cos(a), 2.0 * std::sin(a)});
        labels.push_back(Species::T);
        omega.push_back(std::numeric_limits<double>::quiet_NaN());
    }
    pts.push_back({0, 0});  // macrophage on the vessel
    labels.push_back(Species::M2);
    omega.push_back(0.9);
    const auto cloud = make_cloud(pts, labels, omega);

    const auto d = simple_descriptor(cloud);
    CHECK(d.values[0] == 5.0);                                // n_T
    CHECK(d.values[1] == 1.0);                                // n_M
    CHECK(d.values[2] == 0.0);                                // n_N
    CHECK(d.values[3] == doctest::Approx(2.0).epsilon(1e-12));  // mean dist T
    CHECK(d.values[4] == 0.0);                                // empty N -> 0
    CHECK(d.values[5] == 0.0);                                // macrophage on vessel
}
