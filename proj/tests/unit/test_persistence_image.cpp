#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "relph/persistence_image.hpp"
#include "relph/random.hpp"

using namespace relph;

namespace {

ImageSpec spec_for(double b_lo, double b_hi, double p_lo, double p_hi, double p_max,
                   int res = 20, double sigma = 1.0) {
    ImageSpec s;
    s.rows = s.cols = res;
    s.sigma = sigma;
    s.birth_min = b_lo;
    s.birth_max = b_hi;
    s.pers_min = p_lo;
    s.pers_max = p_hi;
    s.weight_scale = p_max;
    return s;
}

PersistenceDiagram diag(std::vector<std::pair<double, double>> pairs) {
    PersistenceDiagram pd;
    pd.pairs = std::move(pairs);
    return pd;
}

}  // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(persistence_image(diag({}), spec_for(0, 1, 0, 1, 1, 0)),
                    InvalidInputError);
    CHECK_THROWS_AS(persistence_image(diag({}), spec_for(1, 1, 0, 1, 1)),
                    InvalidInputError);
    ImageSpec bad = spec_for(0, 1, 0, 1, 1);
    bad.sigma = 0.0;
    CHECK_THROWS_AS(persistence_image(diag({}), bad), InvalidInputError);
    bad = spec_for(0, 1, 0, 1, 1);
    bad.weight = "quadratic";
    CHECK_THROWS_AS(persistence_image(diag({}), bad), InvalidInputError);
}

TEST_CASE("empty and all-diagonal diagrams give the zero image") {
    const auto spec = spec_for(0, 2, 0, 2, 2);
    for (const auto& pd : {diag({}), diag({{0.5, 0.5}, {1.5, 1.5}})}) {
        const auto img = persistence_image(pd, spec);
        for (double v : img.flat) CHECK(v == 0.0);
    }
}

TEST_CASE("single point mass approaches its weight as ranges grow") {
    // pair (0, 2) with p_max = 2 has weight exactly 1; over [-6 sigma, +6 sigma]
    // around the transformed point the Gaussian mass is 1 within 1e-6.
    const double sigma = 1.0;
    const auto spec = spec_for(0 - 6 * sigma, 0 + 6 * sigma, 2 - 6 * sigma, 2 + 6 * sigma,
                               2.0, 40, sigma);
    const auto img = persistence_image(diag({{0.0, 2.0}}), spec);
    CHECK(img.sum() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("grid sum is monotone in the ranges") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pd = oracles::random_diagram(rng, 6);
        const auto small = persistence_image(pd, spec_for(0, 2, 0, 2, 2));
        const auto large = persistence_image(pd, spec_for(-2, 4, -2, 4, 2));
        CHECK(large.sum() >= small.sum() - 1e-12);
    }
}

TEST_CASE("images are additive over disjoint unions") {
    Rng rng(33);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = oracles::random_diagram(rng, 5);
        const auto b = oracles::random_diagram(rng, 5);
        PersistenceDiagram both;
        both.pairs = a.pairs;
        both.pairs.insert(both.pairs.end(), b.pairs.begin(), b.pairs.end());
        const auto spec = spec_for(0, 4, 0, 4, 2);
        const auto ia = persistence_image(a, spec);
        const auto ib = persistence_image(b, spec);
        const auto iboth = persistence_image(both, spec);
        for (std::size_t i = 0; i < iboth.flat.size(); ++i)
            CHECK(iboth.flat[i] == doctest::Approx(ia.flat[i] + ib.flat[i]).epsilon(1e-12));
    }
}

TEST_CASE("appending diagonal points never changes the image") {
    Rng rng(55);
    const auto pd = oracles::random_diagram(rng, 6);
    auto padded = pd;
    padded.pairs.emplace_back(0.3, 0.3);
    padded.pairs.emplace_back(1.9, 1.9);
    const auto spec = spec_for(0, 4, 0, 4, 2);
    const auto base = persistence_image(pd, spec);
    const auto same = persistence_image(padded, spec);
    for (std::size_t i = 0; i < base.flat.size(); ++i)
        CHECK(base.flat[i] == same.flat[i]);
}

TEST_CASE("infinite pairs are excluded and counted") {
    const auto spec = spec_for(0, 4, 0, 4, 2);
    const auto img = persistence_image(diag({{0, 2}, {1, kInfValue}}), spec);
    CHECK(img.dropped_infinite == 1);
    const auto finite_only = persistence_image(diag({{0, 2}}), spec);
    for (std::size_t i = 0; i < img.flat.size(); ++i)
        CHECK(img.flat[i] == finite_only.flat[i]);
}

TEST_CASE("pixel values equal a quadrature of the weighted Gaussian") {
    // midpoint quadrature over one pixel as an independent check of the
    // CDF-difference integration
    const auto spec = spec_for(0, 4, 0, 4, 2.0, 4, 0.8);
    const double b = 1.3, d = 3.1;
    const auto img = persistence_image(diag({{b, d}}), spec);
    const double p = d - b;
    const double w = std::min(p / 2.0, 1.0);
    const int r = 1, c = 2;
    const double cell = 1.0;  // 4x4 grid over [0,4]
    const double x0 = 0 + c * cell, y0 = 0 + r * cell;
    const int steps = 400;
    double integral = 0.0;
    for (int i = 0; i < steps; ++i)
        for (int j = 0; j < steps; ++j) {
            const double x = x0 + (i + 0.5) * cell / steps;
            const double y = y0 + (j + 0.5) * cell / steps;
            const double gx = (x - b) / spec.sigma;
            const double gy = (y - p) / spec.sigma;
            integral += std::exp(-0.5 * (gx * gx + gy * gy)) /
                        (2.0 * M_PI * spec.sigma * spec.sigma) * (cell / steps) *
                        (cell / steps);
        }
    CHECK(img.at(r, c) == doctest::Approx(w * integral).epsilon(1e-6));
}

TEST_CASE("image changes are O(delta) under single-pair perturbation") {
    const auto spec = spec_for(0, 4, 0, 4, 2);
    const auto base = persistence_image(diag({{1.0, 2.5}}), spec);
    auto linf_change = [&](double delta) {
        const auto moved = persistence_image(diag({{1.0 + delta, 2.5 + delta}}), spec);
        double worst = 0.0;
        for (std::size_t i = 0; i < base.flat.size(); ++i)
            worst = std::max(worst, std::abs(base.flat[i] - moved.flat[i]));
        return worst;
    };
    const double slope = linf_change(1e-2) / 1e-2;
    CHECK(linf_change(1e-3) <= 2.0 * slope * 1e-3 + 1e-12);
}
