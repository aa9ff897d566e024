#include <catch_amalgamated.hpp>

#include <array>
#include <map>
#include <queue>

#include "seglat/cluster.hpp"
#include "seglat/site_config.hpp"

using namespace seglat;

namespace {

struct BfsReport {
    std::vector<std::int32_t> comp;
    std::vector<std::int64_t> sizes;
    std::vector<std::uint8_t> wraps;
};

// Reference labeling: breadth-first search over blue adjacency carrying
// covering-space positions; a revisit with a shifted position certifies
// winding along that axis.
BfsReport bfs_clusters(const Geometry& g, const BlueEdgeSet& b) {
    BfsReport rep;
    rep.comp.assign(g.n_sites, -1);
    std::vector<std::array<std::int64_t, kMaxAxes>> pos(g.n_sites);

    auto blue_between = [&](std::int64_t s, Direction dir) {
        const std::int64_t e = (dir.sign > 0 ? s : g.neighbor(s, dir)) * g.d + dir.axis;
        return b.blue(e);
    };
    std::vector<std::uint8_t> touched(g.n_sites, 0);
    for (std::int64_t e = 0; e < g.n_edges(); ++e)
        if (b.blue(e)) touched[g.edge_site(e)] = touched[g.edge_other(e)] = 1;

    for (std::int64_t start = 0; start < g.n_sites; ++start) {
        if (!touched[start] || rep.comp[start] >= 0) continue;
        const auto id = static_cast<std::int32_t>(rep.sizes.size());
        rep.sizes.push_back(0);
        rep.wraps.push_back(0);
        std::queue<std::int64_t> q;
        rep.comp[start] = id;
        pos[start].fill(0);
        q.push(start);
        while (!q.empty()) {
            const std::int64_t s = q.front();
            q.pop();
            ++rep.sizes[id];
            for (int a = 0; a < g.d; ++a) {
                for (int sign : {+1, -1}) {
                    const Direction dir{a, sign};
                    if (!blue_between(s, dir)) continue;
                    const std::int64_t t = g.neighbor(s, dir);
                    auto tp = pos[s];
                    tp[a] += sign;
                    if (rep.comp[t] < 0) {
                        rep.comp[t] = id;
                        pos[t] = tp;
                        q.push(t);
                    } else {
                        for (int ax = 0; ax < g.d; ++ax)
                            if (pos[t][ax] != tp[ax])
                                rep.wraps[id] |= std::uint8_t(1) << ax;
                    }
                }
            }
        }
    }
    return rep;
}

void compare_with_bfs(const Geometry& g, const BlueEdgeSet& b) {
    const ClusterReport got = clusters(g, b);
    const BfsReport want = bfs_clusters(g, b);
    REQUIRE(got.sizes.size() == want.sizes.size());
    std::map<std::int32_t, std::int32_t> relabel;
    for (std::int64_t s = 0; s < g.n_sites; ++s) {
        REQUIRE((got.component_of[s] >= 0) == (want.comp[s] >= 0));
        if (got.component_of[s] < 0) continue;
        const auto it = relabel.find(got.component_of[s]);
        if (it == relabel.end()) relabel[got.component_of[s]] = want.comp[s];
        else REQUIRE(it->second == want.comp[s]);
    }
    for (const auto& [mine, theirs] : relabel) {
        REQUIRE(got.sizes[mine] == want.sizes[theirs]);
        REQUIRE(got.wrap_flags[mine] == want.wraps[theirs]);
    }
}

} // namespace

TEST_CASE("hand-built components on a free box") {
    const Geometry g = make_geometry(2, {4, 4}, Boundary::Free);
    BlueEdgeSet b = BlueEdgeSet::empty(g, ModelTag::Independent);
    // a 3-site path along the bottom row and an isolated edge above
    b.set_blue(g.index({0, 0}) * 2 + 0);
    b.set_blue(g.index({1, 0}) * 2 + 0);
    b.set_blue(g.index({2, 3}) * 2 + 0);
    const ClusterReport rep = clusters(g, b);
    REQUIRE(rep.component_count() == 2);
    std::vector<std::int64_t> sizes = rep.sizes;
    std::sort(sizes.begin(), sizes.end());
    REQUIRE(sizes == std::vector<std::int64_t>{2, 3});
    REQUIRE(rep.largest_fraction == 3.0 / 16.0);
    REQUIRE_FALSE(wraps_any(rep));
    REQUIRE(rep.component_of[g.index({0, 0})] == rep.component_of[g.index({2, 0})]);
    REQUIRE(rep.component_of[g.index({0, 0})] != rep.component_of[g.index({2, 3})]);
    REQUIRE(rep.component_of[g.index({0, 3})] == -1);
}

TEST_CASE("a straight torus cycle wraps in exactly its own axis") {
    const Geometry g = make_geometry(2, {6, 6}, Boundary::Torus);
    BlueEdgeSet b = BlueEdgeSet::empty(g, ModelTag::Independent);
    for (int x = 0; x < 6; ++x) b.set_blue(g.index({x, 2}) * 2 + 0);
    const ClusterReport rep = clusters(g, b);
    REQUIRE(rep.component_count() == 1);
    REQUIRE(rep.sizes[0] == 6);
    REQUIRE(rep.component_wraps(0, 0));
    REQUIRE_FALSE(rep.component_wraps(0, 1));
}

TEST_CASE("a contractible loop does not wrap") {
    const Geometry g = make_geometry(2, {6, 6}, Boundary::Torus);
    BlueEdgeSet b = BlueEdgeSet::empty(g, ModelTag::Independent);
    // unit square at (1,1)
    b.set_blue(g.index({1, 1}) * 2 + 0);
    b.set_blue(g.index({1, 1}) * 2 + 1);
    b.set_blue(g.index({2, 1}) * 2 + 1);
    b.set_blue(g.index({1, 2}) * 2 + 0);
    const ClusterReport rep = clusters(g, b);
    REQUIRE(rep.component_count() == 1);
    REQUIRE(rep.sizes[0] == 4);
    REQUIRE_FALSE(wraps_any(rep));
}

TEST_CASE("fully blue torus wraps every axis") {
    const Geometry g = make_geometry(3, {4, 4, 4}, Boundary::Torus);
    BlueEdgeSet b = BlueEdgeSet::empty(g, ModelTag::Independent);
    for (std::int64_t e = 0; e < g.n_edges(); ++e) b.set_blue(e);
    const ClusterReport rep = clusters(g, b);
    REQUIRE(rep.component_count() == 1);
    REQUIRE(rep.largest_fraction == 1.0);
    for (int a = 0; a < 3; ++a) REQUIRE(rep.component_wraps(0, a));
}

TEST_CASE("labels, sizes and winding agree with breadth-first search") {
    for (int rep = 0; rep < 40; ++rep) {
        const Geometry g = make_geometry(2, {16, 16}, Boundary::Torus);
        const SiteConfig cfg = sample_sites(g, 0.5, 300 + rep);
        const BlueEdgeSet b =
            independent_blue(cfg, feasible_segments(cfg), 0.35 + 0.01 * (rep % 10),
                             900 + rep);
        compare_with_bfs(g, b);
    }
    for (int rep = 0; rep < 10; ++rep) {
        const Geometry g = make_geometry(3, {6, 6, 6}, Boundary::Torus);
        const SiteConfig cfg = sample_sites(g, 0.4, 700 + rep);
        const BlueEdgeSet b = independent_blue(cfg, feasible_segments(cfg), 0.2, 800 + rep);
        compare_with_bfs(g, b);
    }
}
