#include "relph/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relph/errors.hpp"

namespace relph {

Simplex Simplex::vertex(int a) {
    Simplex s;
    s.v = {a, -1, -1};
    s.dim = 0;
    return s;
}

Simplex Simplex::edge(int a, int b) {
    if (a > b) std::swap(a, b);
    if (a == b) throw InvalidInputError("degenerate edge (" + std::to_string(a) + ")");
    Simplex s;
    s.v = {a, b, -1};
    s.dim = 1;
    return s;
}

Simplex Simplex::triangle(int a, int b, int c) {
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2])
        throw InvalidInputError("degenerate triangle");
    Simplex s;
    s.v = t;
    s.dim = 2;
    return s;
}

std::vector<Simplex> Simplex::facets() const {
    switch (dim) {
        case 0: return {};
        case 1: return {vertex(v[0]), vertex(v[1])};
        default:
            return {edge(v[0], v[1]), edge(v[0], v[2]), edge(v[1], v[2])};
    }
}

namespace {

bool canonical_less(const FilteredSimplex& a, const FilteredSimplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.simplex.dim != b.simplex.dim) return a.simplex.dim < b.simplex.dim;
    return a.simplex.key() < b.simplex.key();
}

}  // namespace

void FilteredComplex::sort_canonical() {
    std::sort(simplices.begin(), simplices.end(), canonical_less);
}

void check_filtered_complex(const FilteredComplex& fc) {
    for (std::size_t i = 1; i < fc.simplices.size(); ++i)
        if (!canonical_less(fc.simplices[i - 1], fc.simplices[i]))
            throw InvalidInputError("complex not in canonical order at position " +
                                    std::to_string(i));
    std::map<Simplex, double> value_of;
    for (const auto& fs : fc.simplices) {
        if (!(fs.value >= 0.0))
            throw InvalidInputError("negative or NaN filtration value");
        if (!value_of.emplace(fs.simplex, fs.value).second)
            throw InvalidInputError("duplicate simplex in complex");
    }
    for (const auto& fs : fc.simplices) {
        for (const auto& face : fs.simplex.facets()) {
            auto it = value_of.find(face);
            if (it == value_of.end())
                throw InvalidInputError("missing face of a simplex");
            if (it->second > fs.value)
                throw InvalidInputError("face monotonicity violated");
        }
    }
}

FilteredComplex vietoris_rips(const DistanceMatrix& dist, double max_value) {
    if (dist.rows != dist.cols || !dist.is_symmetric())
        throw InvalidInputError("Vietoris-Rips needs a symmetric distance matrix");
    if (!(max_value >= 0.0))
        throw InvalidInputError("max_value must be nonnegative");
    const int n = static_cast<int>(dist.rows);

    FilteredComplex fc;
    for (int i = 0; i < n; ++i)
        fc.simplices.push_back({Simplex::vertex(i), 0.0});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = dist.at(i, j);
            if (d <= max_value) fc.simplices.push_back({Simplex::edge(i, j), d});
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dij = dist.at(i, j);
            if (dij > max_value) continue;
            for (int k = j + 1; k < n; ++k) {
                const double m =
                    std::max(dij, std::max(dist.at(i, k), dist.at(j, k)));
                if (m <= max_value)
                    fc.simplices.push_back({Simplex::triangle(i, j, k), m});
            }
        }
    fc.sort_canonical();
    return fc;
}

FilteredComplex dowker(const DistanceMatrix& cross, double max_value) {
    if (cross.rows == 0 || cross.cols == 0)
        throw InvalidInputError("Dowker filtration needs a nonempty cross matrix");
    if (!(max_value >= 0.0))
        throw InvalidInputError("max_value must be nonnegative");
    const int n = static_cast<int>(cross.rows);
    const int m = static_cast<int>(cross.cols);
    const double* data = cross.values.data();

    FilteredComplex fc;
    for (int i = 0; i < n; ++i) {
        const double* ri = data + static_cast<std::size_t>(i) * m;
        double best = kInfValue;
        for (int v = 0; v < m; ++v) best = std::min(best, ri[v]);
        if (best <= max_value) fc.simplices.push_back({Simplex::vertex(i), best});
    }

    // Edge values are kept for pruning the triangle pass.
    std::vector<double> edge_value(static_cast<std::size_t>(n) * n, kInfValue);
    for (int i = 0; i < n; ++i) {
        const double* ri = data + static_cast<std::size_t>(i) * m;
        for (int j = i + 1; j < n; ++j) {
            const double* rj = data + static_cast<std::size_t>(j) * m;
            double best = kInfValue;
            for (int v = 0; v < m; ++v) best = std::min(best, std::max(ri[v], rj[v]));
            edge_value[static_cast<std::size_t>(i) * n + j] = best;
            if (best <= max_value) fc.simplices.push_back({Simplex::edge(i, j), best});
        }
    }
    for (int i = 0; i < n; ++i) {
        const double* ri = data + static_cast<std::size_t>(i) * m;
        for (int j = i + 1; j < n; ++j) {
            if (edge_value[static_cast<std::size_t>(i) * n + j] > max_value) continue;
            const double* rj = data + static_cast<std::size_t>(j) * m;
            for (int k = j + 1; k < n; ++k) {
                if (edge_value[static_cast<std::size_t>(i) * n + k] > max_value ||
                    edge_value[static_cast<std::size_t>(j) * n + k] > max_value)
                    continue;
                const double* rk = data + static_cast<std::size_t>(k) * m;
                double best = kInfValue;
                for (int v = 0; v < m; ++v)
                    best = std::min(best, std::max(ri[v], std::max(rj[v], rk[v])));
                if (best <= max_value)
                    fc.simplices.push_back({Simplex::triangle(i, j, k), best});
            }
        }
    }
    fc.sort_canonical();
    return fc;
}

FilteredComplex dowker_pair(const LabeledPointCloud& cloud, Species u, Species v,
                            double max_value) {
    const std::size_t nu = cloud.count(u);
    const std::size_t nv = cloud.count(v);
    if (nu == 0) throw EmptySubcloudError("species " + to_string(u) + " has no points");
    if (nv == 0) throw EmptySubcloudError("species " + to_string(v) + " has no points");
    const Species vertex_species = (nv < nu) ? v : u;
    const Species witness_species = (nv < nu) ? u : v;
    return dowker(cross_distances(cloud, vertex_species, witness_species), max_value);
}

namespace {

std::vector<Simplex> triangulation_simplices(const Triangulation& tri) {
    std::vector<Simplex> out;
    for (int v : tri.vertices) out.push_back(Simplex::vertex(v));
    for (const auto& e : tri.edges) out.push_back(Simplex::edge(e[0], e[1]));
    for (const auto& t : tri.triangles) out.push_back(Simplex::triangle(t[0], t[1], t[2]));
    return out;
}

std::vector<int> raw_witness_counts(const std::vector<Simplex>& simplices,
                                    const std::vector<Point>& landmarks,
                                    const std::vector<Point>& witnesses) {
    const int num_landmarks = static_cast<int>(landmarks.size());
    std::vector<int> counts(simplices.size(), 0);
    std::vector<double> dist(num_landmarks);
    std::vector<int> order(num_landmarks);

    for (const auto& w : witnesses) {
        for (int l = 0; l < num_landmarks; ++l) dist[l] = euclidean(w, landmarks[l]);
        for (int l = 0; l < num_landmarks; ++l) order[l] = l;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
        });
        for (std::size_t s = 0; s < simplices.size(); ++s) {
            const Simplex& sx = simplices[s];
            double max_in = 0.0;
            for (int d = 0; d <= sx.dim; ++d) max_in = std::max(max_in, dist[sx.v[d]]);
            // Nearest landmark outside sigma; the quantifier is vacuous when
            // sigma contains every landmark.
            double min_out = kInfValue;
            for (int l : order) {
                const bool inside = (l == sx.v[0]) || (sx.dim >= 1 && l == sx.v[1]) ||
                                    (sx.dim >= 2 && l == sx.v[2]);
                if (!inside) {
                    min_out = dist[l];
                    break;
                }
            }
            if (max_in <= min_out) ++counts[s];
        }
    }
    return counts;
}

}  // namespace

std::map<Simplex, int> witness_counts(const Triangulation& landmark_tri,
                                      const std::vector<Point>& landmarks,
                                      const std::vector<Point>& witnesses) {
    const auto simplices = triangulation_simplices(landmark_tri);
    const auto counts = raw_witness_counts(simplices, landmarks, witnesses);
    std::map<Simplex, int> out;
    for (std::size_t s = 0; s < simplices.size(); ++s) out[simplices[s]] = counts[s];
    return out;
}

FilteredComplex witness_filtration(const Triangulation& landmark_tri,
                                   const std::vector<Point>& landmarks,
                                   const std::vector<Point>& witnesses,
                                   const std::string& witness_name) {
    const auto simplices = triangulation_simplices(landmark_tri);
    const auto counts = raw_witness_counts(simplices, landmarks, witnesses);
    const int mu_max = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
    if (mu_max == 0)
        throw ZeroWitnessError("witness species " + witness_name +
                               " witnesses no simplex of the landmark triangulation");

    std::map<Simplex, double> value;
    for (std::size_t s = 0; s < simplices.size(); ++s)
        value[simplices[s]] =
            static_cast<double>(mu_max - counts[s]) / static_cast<double>(mu_max);

    // A simplex drags its faces in with it: lower every face to the minimum
    // over its cofaces, triangles first so the edge values already include
    // them when vertices are processed.
    for (const auto& t : landmark_tri.triangles) {
        const Simplex tri = Simplex::triangle(t[0], t[1], t[2]);
        const double tv = value[tri];
        for (const auto& face : tri.facets()) value[face] = std::min(value[face], tv);
    }
    for (const auto& e : landmark_tri.edges) {
        const Simplex edge = Simplex::edge(e[0], e[1]);
        const double ev = value[edge];
        for (const auto& face : edge.facets()) value[face] = std::min(value[face], ev);
    }

    FilteredComplex fc;
    for (const auto& [simplex, val] : value) fc.simplices.push_back({simplex, val});
    fc.sort_canonical();
    return fc;
}

}  // namespace relph
