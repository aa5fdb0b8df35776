#include "relph/diagram_distance.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "relph/errors.hpp"

namespace relph {

namespace {

struct SplitDiagram {
    std::vector<std::pair<double, double>> finite;  // positive persistence only
    std::vector<double> essential_births;           // sorted
};

/// Zero-persistence points are free (they match their own projection at cost
/// zero), so they are dropped up front; this keeps the invariance exact.
SplitDiagram split(const PersistenceDiagram& pd) {
    SplitDiagram s;
    for (const auto& [b, d] : pd.pairs) {
        if (std::isinf(d))
            s.essential_births.push_back(b);
        else if (d > b)
            s.finite.emplace_back(b, d);
    }
    std::sort(s.finite.begin(), s.finite.end());
    std::sort(s.essential_births.begin(), s.essential_births.end());
    return s;
}

double linf(const std::pair<double, double>& x, const std::pair<double, double>& y) {
    return std::max(std::abs(x.first - y.first), std::abs(x.second - y.second));
}

double persistence_half(const std::pair<double, double>& x) {
    return 0.5 * (x.second - x.first);
}

/// Bipartite matching that grows as edges are inserted in cost order.
class IncrementalMatching {
public:
    IncrementalMatching(int nleft, int nright)
        : adj_(nleft), match_left_(nleft, -1), match_right_(nright, -1) {}

    void add_edge(int l, int r) { adj_[l].push_back(r); }

    /// Attempt to augment every unmatched left node; returns matching size.
    int grow() {
        for (int u = 0; u < static_cast<int>(adj_.size()); ++u) {
            if (match_left_[u] >= 0) continue;
            std::vector<char> visited(match_right_.size(), 0);
            if (try_augment(u, visited)) ++size_;
        }
        return size_;
    }

private:
    bool try_augment(int u, std::vector<char>& visited) {
        for (int r : adj_[u]) {
            if (visited[r]) continue;
            visited[r] = 1;
            if (match_right_[r] < 0 || try_augment(match_right_[r], visited)) {
                match_right_[r] = u;
                match_left_[u] = r;
                return true;
            }
        }
        return false;
    }

    std::vector<std::vector<int>> adj_;
    std::vector<int> match_left_, match_right_;
    int size_ = 0;
};

/// Exact optimal bottleneck cost of the finite parts.
double finite_bottleneck(const SplitDiagram& a, const SplitDiagram& b) {
    const int na = static_cast<int>(a.finite.size());
    const int nb = static_cast<int>(b.finite.size());
    if (na == 0 && nb == 0) return 0.0;

    // Left nodes: A points then one diagonal slot per B point. Right nodes:
    // B points then one diagonal slot per A point. Diagonal-diagonal edges
    // cost 0 and are always present.
    struct Edge {
        double cost;
        int l, r;
    };
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(na) * nb + na + nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) edges.push_back({linf(a.finite[i], b.finite[j]), i, j});
    for (int i = 0; i < na; ++i)
        edges.push_back({persistence_half(a.finite[i]), i, nb + i});
    for (int j = 0; j < nb; ++j)
        edges.push_back({persistence_half(b.finite[j]), na + j, j});
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
        if (x.cost != y.cost) return x.cost < y.cost;
        if (x.l != y.l) return x.l < y.l;
        return x.r < y.r;
    });

    IncrementalMatching matching(na + nb, na + nb);
    for (int j = 0; j < nb; ++j)
        for (int i = 0; i < na; ++i) matching.add_edge(na + j, nb + i);
    const int target = na + nb;
    if (matching.grow() == target) return 0.0;

    std::size_t e = 0;
    while (e < edges.size()) {
        const double t = edges[e].cost;
        while (e < edges.size() && edges[e].cost == t) {
            matching.add_edge(edges[e].l, edges[e].r);
            ++e;
        }
        if (matching.grow() == target) return t;
    }
    return kInfValue;  // unreachable: every point can match the diagonal
}

/// Classical O(n^3) Hungarian algorithm for square min-cost assignment.
double hungarian(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return 0.0;
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInfValue);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = kInfValue;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    double total = 0.0;
    for (int j = 1; j <= n; ++j) total += cost[p[j] - 1][j - 1];
    return total;
}

bool essential_mismatch(const SplitDiagram& a, const SplitDiagram& b) {
    return a.essential_births.size() != b.essential_births.size();
}

/// Sorted-order matching is optimal on the line for both sup and convex sums.
double essential_bottleneck(const SplitDiagram& a, const SplitDiagram& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.essential_births.size(); ++i)
        worst = std::max(worst, std::abs(a.essential_births[i] - b.essential_births[i]));
    return worst;
}

bool diagram_less(const SplitDiagram& a, const SplitDiagram& b) {
    if (a.finite != b.finite) return a.finite < b.finite;
    return a.essential_births < b.essential_births;
}

}  // namespace

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    if (a.dim != b.dim)
        throw InvalidInputError("bottleneck: diagrams have different homology dimensions");
    const SplitDiagram sa = split(a);
    const SplitDiagram sb = split(b);
    if (essential_mismatch(sa, sb)) return kInfValue;
    return std::max(finite_bottleneck(sa, sb), essential_bottleneck(sa, sb));
}

double wasserstein(const PersistenceDiagram& a, const PersistenceDiagram& b, double q) {
    if (a.dim != b.dim)
        throw InvalidInputError("wasserstein: diagrams have different homology dimensions");
    if (!(q >= 1.0)) throw InvalidInputError("wasserstein: q must be >= 1");
    SplitDiagram sa = split(a);
    SplitDiagram sb = split(b);
    if (essential_mismatch(sa, sb)) return kInfValue;
    // Canonical argument order makes the summation order, and therefore the
    // result, exactly symmetric.
    if (diagram_less(sb, sa)) std::swap(sa, sb);

    auto powq = [q](double x) { return q == 1.0 ? x : std::pow(x, q); };
    const double sqrt2 = std::sqrt(2.0);

    double total = 0.0;
    for (std::size_t i = 0; i < sa.essential_births.size(); ++i)
        total += powq(std::abs(sa.essential_births[i] - sb.essential_births[i]));

    const int na = static_cast<int>(sa.finite.size());
    const int nb = static_cast<int>(sb.finite.size());
    const int n = na + nb;
    if (n > 0) {
        std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < na; ++i) {
            const double diag = powq(persistence_half(sa.finite[i]) * sqrt2);
            for (int j = 0; j < nb; ++j)
                cost[i][j] = powq(std::hypot(sa.finite[i].first - sb.finite[j].first,
                                             sa.finite[i].second - sb.finite[j].second));
            for (int j = nb; j < n; ++j) cost[i][j] = diag;
        }
        // Rows na.. are diagonal slots: matching b_j to any of them costs
        // b_j's own distance to the diagonal. Slot-slot entries stay 0.
        for (int j = 0; j < nb; ++j) {
            const double diag = powq(persistence_half(sb.finite[j]) * sqrt2);
            for (int i = na; i < n; ++i) cost[i][j] = diag;
        }
        total += hungarian(cost);
    }
    return q == 1.0 ? total : std::pow(total, 1.0 / q);
}

}  // namespace relph
