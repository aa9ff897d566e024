#pragma once

#include <cstdint>
#include <vector>

#include "seglat/site_config.hpp"

namespace seglat {

// A feasible pair of occupied sites, identified with the axis-aligned
// line segment joining them. Interior sites are all unoccupied.
struct Segment {
    int axis;
    std::int64_t a; // endpoint site; segment runs from a in direction +axis
    std::int64_t b;
    bool wraps;     // full-cycle line, or arc crossing the periodic seam
    int interior;   // unoccupied sites strictly between a and b

    int edge_count(const Geometry& g) const {
        if (a == b && wraps) return g.lengths[axis]; // single occupied site on a cycle
        return interior + 1;
    }
};

struct SegmentSet {
    std::vector<Segment> segments;
    // incident[site*2d + dir.encode()] = segment id reached from an occupied
    // site in that direction, or -1.
    std::vector<std::int32_t> incident;

    std::int32_t incident_segment(const Geometry& g, std::int64_t site, Direction dir) const {
        return incident[site * 2 * g.d + dir.encode()];
    }
};

// All feasible pairs of the window. On a torus, a line with exactly one
// occupied site yields a single full-cycle segment (a == b); a line with
// no occupied site yields nothing. On a free box, segments that would
// cross the wall before reaching an occupied site are dropped.
inline SegmentSet feasible_segments(const SiteConfig& cfg) {
    const Geometry& g = cfg.geometry;
    SegmentSet out;
    out.incident.assign(g.n_sites * 2 * g.d, -1);

    std::vector<std::int64_t> occ_pos;
    for (int axis = 0; axis < g.d; ++axis) {
        const int L = g.lengths[axis];
        const std::int64_t stride = g.strides[axis];
        for (std::int64_t base = 0; base < g.n_sites; ++base) {
            if (g.coord(base, axis) != 0) continue;
            occ_pos.clear();
            for (int j = 0; j < L; ++j) {
                const std::int64_t s = base + j * stride;
                if (cfg.occupied(s)) occ_pos.push_back(j);
            }
            if (occ_pos.empty()) continue;

            auto link = [&](std::int64_t sa, std::int64_t sb, int interior, bool wraps) {
                const auto id = static_cast<std::int32_t>(out.segments.size());
                out.segments.push_back({axis, sa, sb, wraps, interior});
                out.incident[sa * 2 * g.d + Direction{axis, +1}.encode()] = id;
                out.incident[sb * 2 * g.d + Direction{axis, -1}.encode()] = id;
            };

            if (g.boundary == Boundary::Torus) {
                const auto k = occ_pos.size();
                if (k == 1) {
                    const std::int64_t s = base + occ_pos[0] * stride;
                    link(s, s, L - 1, true);
                    continue;
                }
                for (std::size_t i = 0; i < k; ++i) {
                    const std::int64_t ja = occ_pos[i];
                    const std::int64_t jb = occ_pos[(i + 1) % k];
                    const bool wraps = (i + 1 == k);
                    const int interior =
                        static_cast<int>(wraps ? (L - ja + jb - 1) : (jb - ja - 1));
                    link(base + ja * stride, base + jb * stride, interior, wraps);
                }
            } else {
                for (std::size_t i = 0; i + 1 < occ_pos.size(); ++i) {
                    const std::int64_t ja = occ_pos[i], jb = occ_pos[i + 1];
                    link(base + ja * stride, base + jb * stride,
                         static_cast<int>(jb - ja - 1), false);
                }
            }
        }
    }
    return out;
}

} // namespace seglat
