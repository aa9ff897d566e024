#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace seglat {

enum class Boundary { Torus, Free };

// A coordinate direction +/- e_axis. There are exactly 2d of these.
struct Direction {
    int axis;
    int sign; // +1 or -1

    int encode() const { return axis * 2 + (sign < 0 ? 1 : 0); }
    static Direction decode(int code) { return {code / 2, (code % 2) ? -1 : +1}; }
    Direction operator-() const { return {axis, -sign}; }
    bool operator==(const Direction&) const = default;
};

// Finite hypercubic window with canonical row-major site indexing
// (axis 0 varies fastest).
struct Geometry {
    int d = 0;
    std::vector<int> lengths;
    Boundary boundary = Boundary::Torus;
    std::vector<std::int64_t> strides;
    std::int64_t n_sites = 0;

    std::int64_t n_edges() const { return n_sites * d; } // edge id = site*d + axis

    int coord(std::int64_t site, int axis) const {
        return static_cast<int>((site / strides[axis]) % lengths[axis]);
    }

    std::vector<int> coords(std::int64_t site) const {
        std::vector<int> c(d);
        for (int a = 0; a < d; ++a) c[a] = coord(site, a);
        return c;
    }

    std::int64_t index(const std::vector<int>& c) const {
        std::int64_t s = 0;
        for (int a = 0; a < d; ++a) s += static_cast<std::int64_t>(c[a]) * strides[a];
        return s;
    }

    // Neighbour one step along dir; -1 if it would leave a free box.
    std::int64_t neighbor(std::int64_t site, Direction dir) const {
        const int c = coord(site, dir.axis);
        const int L = lengths[dir.axis];
        if (dir.sign > 0) {
            if (c == L - 1) {
                if (boundary == Boundary::Free) return -1;
                return site - static_cast<std::int64_t>(L - 1) * strides[dir.axis];
            }
            return site + strides[dir.axis];
        }
        if (c == 0) {
            if (boundary == Boundary::Free) return -1;
            return site + static_cast<std::int64_t>(L - 1) * strides[dir.axis];
        }
        return site - strides[dir.axis];
    }

    // Endpoints of edge id e = site*d + axis, i.e. (site, site + e_axis).
    // On a free box the edge is invalid when the far endpoint leaves the box.
    std::int64_t edge_site(std::int64_t e) const { return e / d; }
    int edge_axis(std::int64_t e) const { return static_cast<int>(e % d); }
    std::int64_t edge_other(std::int64_t e) const {
        return neighbor(edge_site(e), Direction{edge_axis(e), +1});
    }
    bool edge_valid(std::int64_t e) const {
        return boundary == Boundary::Torus ||
               coord(edge_site(e), edge_axis(e)) != lengths[edge_axis(e)] - 1;
    }
};

inline Geometry make_geometry(int d, const std::vector<int>& lengths, Boundary boundary) {
    if (d < 1) throw std::invalid_argument("make_geometry: d must be >= 1");
    if (static_cast<int>(lengths.size()) != d)
        throw std::invalid_argument("make_geometry: need one length per axis");
    Geometry g;
    g.d = d;
    g.lengths = lengths;
    g.boundary = boundary;
    g.strides.resize(d);
    std::int64_t n = 1;
    for (int a = 0; a < d; ++a) {
        if (lengths[a] < 4)
            throw std::invalid_argument("make_geometry: side lengths must be >= 4");
        g.strides[a] = n;
        if (n > std::numeric_limits<std::int64_t>::max() / lengths[a])
            throw std::invalid_argument("make_geometry: site count overflows");
        n *= lengths[a];
    }
    g.n_sites = n;
    return g;
}

} // namespace seglat
