#include "relph/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace relph {

namespace {

constexpr double kIncircleEps = 1e-12;

bool is_macrophage(Species s) {
    return s == Species::M || s == Species::M1 || s == Species::M2;
}

/// Does a point labeled `label` (with phenotype `om`) belong to the subcloud
/// queried as `query`?
bool matches(Species label, double om, Species query) {
    if (label == query) return true;
    if (query == Species::M) return label == Species::M1 || label == Species::M2;
    if (label == Species::M && query == Species::M1) return om < 0.5;
    if (label == Species::M && query == Species::M2) return om >= 0.5;
    return false;
}

}  // namespace

double euclidean(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

std::string to_string(Species s) {
    switch (s) {
        case Species::V: return "V";
        case Species::T: return "T";
        case Species::N: return "N";
        case Species::M: return "M";
        case Species::M1: return "M1";
        case Species::M2: return "M2";
        case Species::S: return "S";
    }
    return "?";
}

Species species_from_string(const std::string& s) {
    if (s == "V") return Species::V;
    if (s == "T") return Species::T;
    if (s == "N") return Species::N;
    if (s == "M") return Species::M;
    if (s == "M1") return Species::M1;
    if (s == "M2") return Species::M2;
    if (s == "S") return Species::S;
    throw InvalidInputError("unknown species tag '" + s + "'");
}

void LabeledPointCloud::validate() const {
    if (labels.size() != points.size())
        throw InvalidInputError("labels length (" + std::to_string(labels.size()) +
                                ") does not match points length (" +
                                std::to_string(points.size()) + ")");
    if (omega.size() != points.size())
        throw InvalidInputError("omega length does not match points length");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const bool has_omega = !std::isnan(omega[i]);
        if (is_macrophage(labels[i])) {
            if (!has_omega)
                throw InvalidInputError("macrophage point " + std::to_string(i) +
                                        " is missing its phenotype omega");
            if (omega[i] < 0.0 || omega[i] > 1.0)
                throw InvalidInputError("omega out of [0,1] at point " + std::to_string(i));
        } else if (has_omega) {
            throw InvalidInputError("omega present on non-macrophage point " +
                                    std::to_string(i));
        }
    }
    // Coincident cells within one species are rejected; the merged macrophage
    // set counts as one subcloud for this purpose.
    for (Species s : {Species::V, Species::T, Species::N, Species::M, Species::S}) {
        auto pts = subcloud(s);
        std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
            return a.x < b.x || (a.x == b.x && a.y < b.y);
        });
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i] == pts[i - 1])
                throw InvalidInputError("duplicate point (" + std::to_string(pts[i].x) +
                                        ", " + std::to_string(pts[i].y) +
                                        ") in species " + to_string(s));
    }
}

std::vector<std::size_t> LabeledPointCloud::subcloud_indices(Species s) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (matches(labels[i], omega[i], s)) idx.push_back(i);
    return idx;
}

std::vector<Point> LabeledPointCloud::subcloud(Species s) const {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (matches(labels[i], omega[i], s)) pts.push_back(points[i]);
    return pts;
}

std::size_t LabeledPointCloud::count(Species s) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (matches(labels[i], omega[i], s)) ++n;
    return n;
}

LabeledPointCloud make_cloud(std::vector<Point> points, std::vector<Species> labels,
                             std::vector<double> omega) {
    LabeledPointCloud cloud;
    cloud.points = std::move(points);
    cloud.labels = std::move(labels);
    if (omega.empty())
        cloud.omega.assign(cloud.points.size(), std::numeric_limits<double>::quiet_NaN());
    else
        cloud.omega = std::move(omega);
    cloud.validate();
    return cloud;
}

DistanceMatrix DistanceMatrix::transposed() const {
    DistanceMatrix t;
    t.rows = cols;
    t.cols = rows;
    t.values.resize(values.size());
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool DistanceMatrix::is_symmetric() const {
    if (rows != cols) return false;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = i + 1; j < cols; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

DistanceMatrix pairwise_distances(const std::vector<Point>& pts) {
    DistanceMatrix m;
    m.rows = m.cols = pts.size();
    m.values.assign(pts.size() * pts.size(), 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d = euclidean(pts[i], pts[j]);
            m.at(i, j) = d;
            m.at(j, i) = d;
        }
    return m;
}

DistanceMatrix pairwise_distances(const std::vector<Point>& us, const std::vector<Point>& vs) {
    DistanceMatrix m;
    m.rows = us.size();
    m.cols = vs.size();
    m.values.resize(us.size() * vs.size());
    for (std::size_t i = 0; i < us.size(); ++i)
        for (std::size_t j = 0; j < vs.size(); ++j) m.at(i, j) = euclidean(us[i], vs[j]);
    return m;
}

DistanceMatrix within_distances(const LabeledPointCloud& cloud, Species s) {
    const auto pts = cloud.subcloud(s);
    if (pts.empty())
        throw EmptySubcloudError("species " + to_string(s) + " has no points");
    return pairwise_distances(pts);
}

DistanceMatrix cross_distances(const LabeledPointCloud& cloud, Species u, Species v) {
    if (u == v)
        throw InvalidInputError("cross_distances requires two distinct species, got " +
                                to_string(u) + " twice");
    const auto us = cloud.subcloud(u);
    if (us.empty()) throw EmptySubcloudError("species " + to_string(u) + " has no points");
    const auto vs = cloud.subcloud(v);
    if (vs.empty()) throw EmptySubcloudError("species " + to_string(v) + " has no points");
    return pairwise_distances(us, vs);
}

double triangle_area(const Point& a, const Point& b, const Point& c) {
    return 0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double incircle_normalized(const Point& a, const Point& b, const Point& c, const Point& d) {
    // Orient (a, b, c) counterclockwise so the sign convention is fixed;
    // swapping two points flips the determinant back to the CCW convention.
    Point p = a, q = b, r = c;
    const double orient = (q.x - p.x) * (r.y - p.y) - (r.x - p.x) * (q.y - p.y);
    if (orient < 0.0) std::swap(q, r);

    const double m[3][3] = {
        {p.x - d.x, p.y - d.y, (p.x - d.x) * (p.x - d.x) + (p.y - d.y) * (p.y - d.y)},
        {q.x - d.x, q.y - d.y, (q.x - d.x) * (q.x - d.x) + (q.y - d.y) * (q.y - d.y)},
        {r.x - d.x, r.y - d.y, (r.x - d.x) * (r.x - d.x) + (r.y - d.y) * (r.y - d.y)},
    };
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    double norm = 1.0;
    for (const auto& row : m)
        norm *= std::sqrt(row[0] * row[0] + row[1] * row[1] + row[2] * row[2]);
    if (norm == 0.0) return 0.0;  // d coincides with a triangle vertex
    return det / norm;
}

std::vector<int> convex_hull(const std::vector<Point>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return pts[i].x < pts[j].x || (pts[i].x == pts[j].x && pts[i].y < pts[j].y);
    });
    auto cross = [&](int o, int a, int b) {
        return (pts[a].x - pts[o].x) * (pts[b].y - pts[o].y) -
               (pts[a].y - pts[o].y) * (pts[b].x - pts[o].x);
    };
    std::vector<int> hull(2 * n);
    int k = 0;
    for (int ii = 0; ii < n; ++ii) {
        const int i = order[ii];
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], i) <= 0) --k;
        hull[k++] = i;
    }
    for (int ii = n - 2, lower = k + 1; ii >= 0; --ii) {
        const int i = order[ii];
        while (k >= lower && cross(hull[k - 2], hull[k - 1], i) <= 0) --k;
        hull[k++] = i;
    }
    hull.resize(k > 0 ? k - 1 : 0);
    return hull;
}

double polygon_area(const std::vector<Point>& pts, const std::vector<int>& ring) {
    double twice = 0.0;
    const int n = static_cast<int>(ring.size());
    for (int i = 0; i < n; ++i) {
        const Point& a = pts[ring[i]];
        const Point& b = pts[ring[(i + 1) % n]];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * std::abs(twice);
}

namespace {

struct Tri {
    int a, b, c;
};

double orient2d(const Point& a, const Point& b, const Point& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// The Bowyer-Watson scaffold uses three vertices at infinity instead of a
// coordinate super-triangle; in-circle tests against them degenerate to
// orientation tests, which avoids the huge ill-conditioned circumcircles
// that otherwise punch holes into nearly collinear hulls. Directions avoid
// axis-parallel data (angles 80, 200, 320 degrees).
constexpr double kSuperDir[3][2] = {
    {0.17364817766693041, 0.98480775301220802},
    {-0.93969262078590838, -0.34202014332566871},
    {0.76604444311897801, -0.64278760968653936},
};

bool in_circle_with_infinite(const std::vector<Point>& pts, int n_real, const Tri& t,
                             const Point& p, double eps) {
    int reals[3], supers[3];
    int nr = 0, ns = 0;
    for (int v : {t.a, t.b, t.c}) {
        if (v < n_real) reals[nr++] = v;
        else supers[ns++] = v - n_real;
    }
    if (nr == 3)
        return incircle_normalized(pts[reals[0]], pts[reals[1]], pts[reals[2]], p) > eps;
    if (nr == 2) {
        // Limit circle through two real points and one infinite vertex: the
        // open half-plane beside (a, b) that the infinite direction points to,
        // plus the open segment between a and b.
        const Point& a = pts[reals[0]];
        const Point& b = pts[reals[1]];
        const double* dir = kSuperDir[supers[0]];
        const double side_inf = (b.x - a.x) * dir[1] - (b.y - a.y) * dir[0];
        const double side_p = orient2d(a, b, p);
        if (side_p == 0.0) {
            const double along = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
            const double len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
            return along > 0.0 && along < len2;
        }
        return side_inf != 0.0 && ((side_inf > 0.0) == (side_p > 0.0));
    }
    if (nr == 1) {
        // One real point and two infinite vertices: the half-plane through the
        // real point with outward normal along the direction bisector.
        const Point& a = pts[reals[0]];
        const double wx = kSuperDir[supers[0]][0] + kSuperDir[supers[1]][0];
        const double wy = kSuperDir[supers[0]][1] + kSuperDir[supers[1]][1];
        return (p.x - a.x) * wx + (p.y - a.y) * wy > 0.0;
    }
    return true;  // the initial all-infinite triangle holds every real point
}

std::array<int, 2> sorted_edge(int a, int b) {
    return a < b ? std::array<int, 2>{a, b} : std::array<int, 2>{b, a};
}

std::array<int, 3> sorted_tri(int a, int b, int c) {
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

/// One pass of cocircular tie-break flips. Each flip replaces a shared
/// diagonal by a lexicographically smaller index pair, so iterating to a
/// fixpoint terminates.
bool tie_break_flips(const std::vector<Point>& pts, std::set<std::array<int, 3>>& tris) {
    std::map<std::array<int, 2>, std::vector<std::array<int, 3>>> by_edge;
    for (const auto& t : tris) {
        by_edge[sorted_edge(t[0], t[1])].push_back(t);
        by_edge[sorted_edge(t[0], t[2])].push_back(t);
        by_edge[sorted_edge(t[1], t[2])].push_back(t);
    }
    for (const auto& [edge, owners] : by_edge) {
        if (owners.size() != 2) continue;
        auto opposite = [&](const std::array<int, 3>& t) {
            for (int v : t)
                if (v != edge[0] && v != edge[1]) return v;
            return -1;
        };
        const int c = opposite(owners[0]);
        const int d = opposite(owners[1]);
        const auto alt = sorted_edge(c, d);
        if (alt >= edge) continue;
        const double ndet =
            incircle_normalized(pts[edge[0]], pts[edge[1]], pts[c], pts[d]);
        if (std::abs(ndet) > kIncircleEps) continue;  // not cocircular
        // The flipped diagonal must actually cross (a, b): a and b have to be
        // on opposite sides of the line through c and d.
        auto side = [&](const Point& p, const Point& q, const Point& r) {
            return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
        };
        if (side(pts[c], pts[d], pts[edge[0]]) * side(pts[c], pts[d], pts[edge[1]]) >= 0)
            continue;
        tris.erase(owners[0]);
        tris.erase(owners[1]);
        tris.insert(sorted_tri(edge[0], c, d));
        tris.insert(sorted_tri(edge[1], c, d));
        return true;
    }
    return false;
}

}  // namespace

Triangulation delaunay_2d(const std::vector<Point>& input) {
    const int n = static_cast<int>(input.size());
    if (n < 3) throw GeometryError("delaunay_2d needs at least 3 points, got " +
                                   std::to_string(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (input[i] == input[j])
                throw GeometryError("duplicate point at indices " + std::to_string(i) +
                                    " and " + std::to_string(j));

    bool collinear = true;
    for (int k = 2; k < n && collinear; ++k)
        if (triangle_area(input[0], input[1], input[k]) > 0.0) collinear = false;
    if (collinear) throw GeometryError("delaunay_2d: all points are collinear");

    const std::vector<Point>& pts = input;
    std::vector<Tri> tris{{n, n + 1, n + 2}};
    for (int ip = 0; ip < n; ++ip) {
        const Point& p = pts[ip];
        std::vector<Tri> bad, keep;
        for (const auto& t : tris) {
            const bool inside = in_circle_with_infinite(pts, n, t, p, kIncircleEps);
            (inside ? bad : keep).push_back(t);
        }
        // Hole boundary: edges belonging to exactly one bad triangle.
        std::map<std::array<int, 2>, int> edge_count;
        for (const auto& t : bad) {
            ++edge_count[sorted_edge(t.a, t.b)];
            ++edge_count[sorted_edge(t.a, t.c)];
            ++edge_count[sorted_edge(t.b, t.c)];
        }
        tris = std::move(keep);
        for (const auto& [edge, count] : edge_count)
            if (count == 1) tris.push_back({edge[0], edge[1], ip});
    }

    std::set<std::array<int, 3>> final_tris;
    for (const auto& t : tris)
        if (t.a < n && t.b < n && t.c < n) final_tris.insert(sorted_tri(t.a, t.b, t.c));

    while (tie_break_flips(input, final_tris)) {
    }

    Triangulation out;
    out.vertices.resize(n);
    for (int i = 0; i < n; ++i) out.vertices[i] = i;
    std::set<std::array<int, 2>> edges;
    for (const auto& t : final_tris) {
        out.triangles.push_back(t);
        edges.insert(sorted_edge(t[0], t[1]));
        edges.insert(sorted_edge(t[0], t[2]));
        edges.insert(sorted_edge(t[1], t[2]));
    }
    out.edges.assign(edges.begin(), edges.end());
    return out;
}

}  // namespace relph
