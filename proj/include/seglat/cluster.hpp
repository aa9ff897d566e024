#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "seglat/coloring.hpp"

namespace seglat {

inline constexpr int kMaxAxes = 8;

// Connected components of sites under blue-edge adjacency. Sites with no
// incident blue edge get no component id; sizes therefore count blue
// sites only. wrap_flags[c] is a per-axis bitmask, set when the component
// contains a cycle with nonzero winding number on a torus.
struct ClusterReport {
    std::vector<std::int32_t> component_of; // -1 for non-blue sites
    std::vector<std::int64_t> sizes;
    std::vector<std::uint8_t> wrap_flags;
    double largest_fraction = 0.0;

    int component_count() const { return static_cast<int>(sizes.size()); }
    bool component_wraps(int c, int axis) const { return (wrap_flags[c] >> axis) & 1u; }
};

namespace detail {

// Weighted union-find carrying each site's displacement to its root in
// the covering space; a union of two already-equivalent sites with
// mismatched displacement along axis k certifies winding along axis k.
class WrapUnionFind {
public:
    WrapUnionFind(std::int64_t n, int d)
        : d_(d), parent_(n), rank_(n, 0), wrap_(n, 0), offset_(n * d, 0) {
        for (std::int64_t i = 0; i < n; ++i) parent_[i] = i;
    }

    std::int64_t find(std::int64_t x, std::array<std::int64_t, kMaxAxes>& pos) {
        pos.fill(0);
        std::int64_t root = x;
        while (parent_[root] != root) root = parent_[root];
        // path compression, accumulating offsets from the leaf down
        std::int64_t cur = x;
        while (parent_[cur] != cur) {
            const std::int64_t next = parent_[cur];
            for (int a = 0; a < d_; ++a) pos[a] += offset_[cur * d_ + a];
            cur = next;
        }
        cur = x;
        std::array<std::int64_t, kMaxAxes> acc{};
        while (parent_[cur] != cur) {
            const std::int64_t next = parent_[cur];
            std::array<std::int64_t, kMaxAxes> step{};
            for (int a = 0; a < d_; ++a) step[a] = offset_[cur * d_ + a];
            parent_[cur] = root;
            for (int a = 0; a < d_; ++a) {
                offset_[cur * d_ + a] = pos[a] - acc[a];
                acc[a] += step[a];
            }
            cur = next;
        }
        return root;
    }

    // Join u and v where v sits at u + delta in the covering space.
    void unite(std::int64_t u, std::int64_t v,
               const std::array<std::int64_t, kMaxAxes>& delta) {
        std::array<std::int64_t, kMaxAxes> pu, pv;
        const std::int64_t ru = find(u, pu);
        const std::int64_t rv = find(v, pv);
        if (ru == rv) {
            for (int a = 0; a < d_; ++a)
                if (pu[a] + delta[a] != pv[a]) wrap_[ru] |= std::uint8_t(1) << a;
            return;
        }
        if (rank_[ru] < rank_[rv]) {
            // attach ru under rv: offset = position of ru relative to rv
            parent_[ru] = rv;
            for (int a = 0; a < d_; ++a)
                offset_[ru * d_ + a] = pv[a] - delta[a] - pu[a];
            wrap_[rv] |= wrap_[ru];
        } else {
            parent_[rv] = ru;
            for (int a = 0; a < d_; ++a)
                offset_[rv * d_ + a] = pu[a] + delta[a] - pv[a];
            wrap_[ru] |= wrap_[rv];
            if (rank_[ru] == rank_[rv]) ++rank_[ru];
        }
    }

    std::uint8_t wrap_mask(std::int64_t root) const { return wrap_[root]; }

private:
    int d_;
    std::vector<std::int64_t> parent_;
    std::vector<std::uint8_t> rank_;
    std::vector<std::uint8_t> wrap_;
    std::vector<std::int64_t> offset_;
};

} // namespace detail

inline ClusterReport clusters(const Geometry& g, const BlueEdgeSet& edges) {
    detail::WrapUnionFind uf(g.n_sites, g.d);
    std::vector<std::uint8_t> is_blue_site(g.n_sites, 0);

    for (std::int64_t e = 0; e < g.n_edges(); ++e) {
        if (!edges.blue(e)) continue;
        const std::int64_t u = g.edge_site(e);
        const std::int64_t v = g.edge_other(e);
        const int axis = g.edge_axis(e);
        is_blue_site[u] = is_blue_site[v] = 1;
        std::array<std::int64_t, kMaxAxes> delta{};
        delta[axis] = 1;
        uf.unite(u, v, delta);
    }

    ClusterReport rep;
    rep.component_of.assign(g.n_sites, -1);
    std::vector<std::int32_t> id_of_root(g.n_sites, -1);
    std::array<std::int64_t, kMaxAxes> pos;
    for (std::int64_t s = 0; s < g.n_sites; ++s) {
        if (!is_blue_site[s]) continue;
        const std::int64_t root = uf.find(s, pos);
        if (id_of_root[root] < 0) {
            id_of_root[root] = static_cast<std::int32_t>(rep.sizes.size());
            rep.sizes.push_back(0);
            rep.wrap_flags.push_back(uf.wrap_mask(root));
        }
        rep.component_of[s] = id_of_root[root];
        ++rep.sizes[id_of_root[root]];
    }
    if (!rep.sizes.empty()) {
        rep.largest_fraction =
            static_cast<double>(*std::max_element(rep.sizes.begin(), rep.sizes.end())) /
            static_cast<double>(g.n_sites);
    }
    return rep;
}

inline bool wraps_any(const ClusterReport& rep) {
    for (auto f : rep.wrap_flags)
        if (f) return true;
    return false;
}

} // namespace seglat
