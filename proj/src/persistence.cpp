#include "relph/persistence.hpp"

#include <algorithm>
#include <iterator>

#include "relph/errors.hpp"

namespace relph {

BoundaryMatrix boundary_matrix(const FilteredComplex& fc) {
    const std::size_t n = fc.size();
    // Flat sorted (simplex key, position) index; faster than a hash map at
    // the sizes full Rips complexes reach.
    std::vector<std::pair<std::uint64_t, std::int32_t>> index(n);
    for (std::size_t i = 0; i < n; ++i)
        index[i] = {fc.simplices[i].simplex.key(), static_cast<std::int32_t>(i)};
    std::sort(index.begin(), index.end());

    auto position_of = [&](const Simplex& s) -> std::int32_t {
        const std::uint64_t key = s.key();
        auto it = std::lower_bound(index.begin(), index.end(),
                                   std::make_pair(key, std::int32_t{0}));
        if (it == index.end() || it->first != key)
            throw InvalidInputError("boundary_matrix: missing face of a simplex");
        return it->second;
    };

    BoundaryMatrix bm;
    bm.columns.resize(n);
    bm.dims.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Simplex& s = fc.simplices[j].simplex;
        bm.dims[j] = static_cast<std::int8_t>(s.dim);
        if (s.dim == 0) continue;
        auto& col = bm.columns[j];
        for (const auto& face : s.facets()) col.push_back(position_of(face));
        std::sort(col.begin(), col.end());
    }
    return bm;
}

namespace {

void add_column(std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b,
                std::vector<std::int32_t>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(scratch));
    a.swap(scratch);
}

}  // namespace

ReductionResult reduce(BoundaryMatrix bm) {
    const std::int32_t n = static_cast<std::int32_t>(bm.size());
    std::vector<std::int32_t> pivot_owner(n, -1);
    std::vector<char> cleared(n, 0);
    ReductionResult res;
    std::vector<std::int32_t> scratch;

    int max_dim = 0;
    for (auto d : bm.dims) max_dim = std::max(max_dim, static_cast<int>(d));

    for (int d = max_dim; d >= 1; --d) {
        for (std::int32_t j = 0; j < n; ++j) {
            if (bm.dims[j] != d || cleared[j]) continue;
            auto& col = bm.columns[j];
            while (!col.empty()) {
                const std::int32_t low = col.back();
                const std::int32_t owner = pivot_owner[low];
                if (owner < 0) {
                    pivot_owner[low] = j;
                    break;
                }
                add_column(col, bm.columns[owner], scratch);
            }
            if (!col.empty()) {
                const std::int32_t low = col.back();
                res.pairs.emplace_back(low, j);
                // Clearing: the paired birth simplex is positive, so its own
                // column is known to reduce to zero.
                cleared[low] = 1;
                bm.columns[low].clear();
            }
        }
    }

    std::vector<char> taken(n, 0);
    for (const auto& [birth, death] : res.pairs) {
        taken[birth] = 1;
        taken[death] = 1;
    }
    for (std::int32_t j = 0; j < n; ++j)
        if (!taken[j]) res.essential.push_back(j);

    res.reduced = std::move(bm);
    return res;
}

DiagramPair diagrams(const FilteredComplex& fc, bool drop_zero) {
    auto red = reduce(boundary_matrix(fc));
    DiagramPair out;
    out.pd0.dim = 0;
    out.pd1.dim = 1;
    auto target = [&](int dim) -> PersistenceDiagram* {
        if (dim == 0) return &out.pd0;
        if (dim == 1) return &out.pd1;
        return nullptr;
    };
    for (const auto& [birth, death] : red.pairs) {
        PersistenceDiagram* pd = target(red.reduced.dims[birth]);
        if (!pd) continue;
        const double b = fc.simplices[birth].value;
        const double d = fc.simplices[death].value;
        if (drop_zero && b == d) continue;
        pd->pairs.emplace_back(b, d);
    }
    for (const std::int32_t j : red.essential) {
        PersistenceDiagram* pd = target(red.reduced.dims[j]);
        if (!pd) continue;
        pd->pairs.emplace_back(fc.simplices[j].value, kInfValue);
    }
    std::sort(out.pd0.pairs.begin(), out.pd0.pairs.end());
    std::sort(out.pd1.pairs.begin(), out.pd1.pairs.end());
    return out;
}

}  // namespace relph
