#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they check: brute-force Z/2 homology by Gaussian elimination,
// exhaustive bijection enumeration for diagram distances, and small random
// input generators.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "relph/filtration.hpp"
#include "relph/persistence.hpp"
#include "relph/random.hpp"

namespace oracles {

using relph::FilteredComplex;
using relph::PersistenceDiagram;
using relph::Rng;
using relph::Simplex;

inline int z2_rank(std::vector<std::vector<char>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    int rank = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r)
            if (m[r][c]) {
                pivot = r;
                break;
            }
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = 0; r < rows; ++r)
            if (r != static_cast<std::size_t>(rank) && m[r][c])
                for (std::size_t cc = 0; cc < cols; ++cc) m[r][cc] ^= m[rank][cc];
        ++rank;
    }
    return rank;
}

/// Betti numbers (b0, b1, b2) of the sublevel complex at threshold t,
/// computed from scratch by ranks of the boundary operators.
inline std::array<int, 3> brute_betti(const FilteredComplex& fc, double t) {
    std::vector<Simplex> verts, edges, tris;
    for (const auto& fs : fc.simplices) {
        if (fs.value > t) continue;
        if (fs.simplex.dim == 0) verts.push_back(fs.simplex);
        else if (fs.simplex.dim == 1) edges.push_back(fs.simplex);
        else tris.push_back(fs.simplex);
    }
    std::map<Simplex, std::size_t> vid, eid;
    for (std::size_t i = 0; i < verts.size(); ++i) vid[verts[i]] = i;
    for (std::size_t i = 0; i < edges.size(); ++i) eid[edges[i]] = i;

    std::vector<std::vector<char>> d1(verts.size(), std::vector<char>(edges.size(), 0));
    for (std::size_t j = 0; j < edges.size(); ++j)
        for (const auto& f : edges[j].facets()) d1[vid.at(f)][j] = 1;
    std::vector<std::vector<char>> d2(edges.size(), std::vector<char>(tris.size(), 0));
    for (std::size_t j = 0; j < tris.size(); ++j)
        for (const auto& f : tris[j].facets()) d2[eid.at(f)][j] = 1;

    const int r1 = z2_rank(d1);
    const int r2 = z2_rank(d2);
    const int b0 = static_cast<int>(verts.size()) - r1;
    const int b1 = static_cast<int>(edges.size()) - r1 - r2;
    const int b2 = static_cast<int>(tris.size()) - r2;
    return {b0, b1, b2};
}

/// Betti number read off a diagram: pairs alive at t (birth <= t < death).
inline int betti_from_diagram(const PersistenceDiagram& pd, double t) {
    int n = 0;
    for (const auto& [b, d] : pd.pairs) n += (b <= t && t < d) ? 1 : 0;
    return n;
}

/// Random valid filtered complex: vertices, a random edge subset, and random
/// triangles whose edges are all present; values respect face monotonicity.
inline FilteredComplex random_complex(Rng& rng, int max_simplices = 12) {
    const int nv = 2 + static_cast<int>(rng.below(4));  // 2..5 vertices
    FilteredComplex fc;
    std::map<Simplex, double> value;
    for (int i = 0; i < nv; ++i) value[Simplex::vertex(i)] = rng.uniform(0.0, 1.0);
    std::vector<std::pair<int, int>> edge_list;
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            if (rng.uniform01() < 0.6) edge_list.emplace_back(i, j);
    for (const auto& [i, j] : edge_list) {
        const Simplex e = Simplex::edge(i, j);
        value[e] = std::max(value[Simplex::vertex(i)], value[Simplex::vertex(j)]) +
                   rng.uniform(0.0, 0.5);
    }
    std::set<std::pair<int, int>> have(edge_list.begin(), edge_list.end());
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            for (int k = j + 1; k < nv; ++k) {
                if (!have.count({i, j}) || !have.count({i, k}) || !have.count({j, k}))
                    continue;
                if (rng.uniform01() > 0.5) continue;
                const Simplex t = Simplex::triangle(i, j, k);
                double m = 0.0;
                for (const auto& f : t.facets()) m = std::max(m, value[f]);
                value[t] = m + rng.uniform(0.0, 0.5);
            }
    for (const auto& [s, v] : value) fc.simplices.push_back({s, v});
    fc.sort_canonical();
    if (static_cast<int>(fc.simplices.size()) > max_simplices) {
        // retry with a fresh draw rather than truncating (which could break
        // closure under faces)
        return random_complex(rng, max_simplices);
    }
    return fc;
}

inline PersistenceDiagram random_diagram(Rng& rng, int max_points, int dim = 0,
                                         double essential_prob = 0.0) {
    PersistenceDiagram pd;
    pd.dim = dim;
    const int n = static_cast<int>(rng.below(max_points + 1));
    for (int i = 0; i < n; ++i) {
        const double b = rng.uniform(0.0, 2.0);
        if (rng.uniform01() < essential_prob) {
            pd.pairs.emplace_back(b, relph::kInfValue);
        } else {
            pd.pairs.emplace_back(b, b + rng.uniform(0.0, 2.0));
        }
    }
    return pd;
}

struct BrutePoint {
    double b, d;
};

/// Exhaustive bottleneck over all partial bijections; unmatched points pay
/// their L-infinity diagonal cost (d - b) / 2.
inline double brute_bottleneck_finite(const std::vector<BrutePoint>& a,
                                      const std::vector<BrutePoint>& b) {
    double best = relph::kInfValue;
    std::vector<char> used(b.size(), 0);
    std::function<void(std::size_t, double)> rec = [&](std::size_t i, double acc) {
        if (acc >= best) return;
        if (i == a.size()) {
            double total = acc;
            for (std::size_t j = 0; j < b.size(); ++j)
                if (!used[j]) total = std::max(total, 0.5 * (b[j].d - b[j].b));
            best = std::min(best, total);
            return;
        }
        rec(i + 1, std::max(acc, 0.5 * (a[i].d - a[i].b)));
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            rec(i + 1, std::max(acc, std::max(std::abs(a[i].b - b[j].b),
                                              std::abs(a[i].d - b[j].d))));
            used[j] = 0;
        }
    };
    rec(0, 0.0);
    return best;
}

/// Exhaustive q-Wasserstein (L2 ground norm, diagonal cost (d-b)/2 * sqrt2).
inline double brute_wasserstein_finite(const std::vector<BrutePoint>& a,
                                       const std::vector<BrutePoint>& b, double q) {
    const double sqrt2 = std::sqrt(2.0);
    double best = relph::kInfValue;
    std::vector<char> used(b.size(), 0);
    std::function<void(std::size_t, double)> rec = [&](std::size_t i, double acc) {
        if (acc >= best) return;
        if (i == a.size()) {
            double total = acc;
            for (std::size_t j = 0; j < b.size(); ++j)
                if (!used[j]) total += std::pow(0.5 * (b[j].d - b[j].b) * sqrt2, q);
            best = std::min(best, total);
            return;
        }
        rec(i + 1, acc + std::pow(0.5 * (a[i].d - a[i].b) * sqrt2, q));
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            rec(i + 1, acc + std::pow(std::hypot(a[i].b - b[j].b, a[i].d - b[j].d), q));
            used[j] = 0;
        }
    };
    rec(0, 0.0);
    return std::pow(best, 1.0 / q);
}

inline std::vector<BrutePoint> finite_points(const PersistenceDiagram& pd) {
    std::vector<BrutePoint> pts;
    for (const auto& [b, d] : pd.pairs)
        if (!std::isinf(d)) pts.push_back({b, d});
    return pts;
}

}  // namespace oracles
