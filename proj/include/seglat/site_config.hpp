#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "seglat/geometry.hpp"
#include "seglat/rng.hpp"

namespace seglat {

// i.i.d. Bernoulli(p) site occupancy, regenerable bit-for-bit from
// (geometry, p, site_seed).
struct SiteConfig {
    Geometry geometry;
    std::vector<std::uint64_t> bits;
    double p = 0.0;
    std::uint64_t site_seed = 0;

    bool occupied(std::int64_t site) const {
        return (bits[site >> 6] >> (site & 63)) & 1u;
    }
    void set_occupied(std::int64_t site, bool v) {
        const std::uint64_t m = std::uint64_t{1} << (site & 63);
        if (v) bits[site >> 6] |= m; else bits[site >> 6] &= ~m;
    }
    std::int64_t occupied_count() const {
        std::int64_t n = 0;
        for (auto w : bits) n += std::popcount(w);
        return n;
    }
};

inline SiteConfig sample_sites(const Geometry& geometry, double p, std::uint64_t site_seed) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("sample_sites: p must lie in (0,1]");
    SiteConfig cfg;
    cfg.geometry = geometry;
    cfg.p = p;
    cfg.site_seed = site_seed;
    cfg.bits.assign((geometry.n_sites + 63) / 64, 0);
    RngStream rng(site_seed, 0, StreamRole::Sites);
    for (std::int64_t s = 0; s < geometry.n_sites; ++s)
        if (rng.bernoulli_at(s, p)) cfg.bits[s >> 6] |= std::uint64_t{1} << (s & 63);
    return cfg;
}

struct ScanResult {
    std::optional<std::int64_t> site; // nearest occupied site, if any
    int gap = 0;                      // unoccupied sites strictly between
};

// Scan from `site` along `dir`, excluding `site` itself. On a torus the
// scan stops when it returns to `site`; on a free box it stops at the wall.
inline ScanResult next_occupied(const SiteConfig& cfg, std::int64_t site, Direction dir) {
    const Geometry& g = cfg.geometry;
    if (site < 0 || site >= g.n_sites)
        throw std::out_of_range("next_occupied: bad site index");
    int gap = 0;
    std::int64_t cur = site;
    for (int step = 0; step < g.lengths[dir.axis] - 1; ++step) {
        cur = g.neighbor(cur, dir);
        if (cur < 0) break; // free boundary
        if (cfg.occupied(cur)) return {cur, gap};
        ++gap;
    }
    return {std::nullopt, gap};
}

// Torus bias bound used by the estimators: wrap-around corrupting a gap
// scan has probability at most (1-p)^(L-2) per line.
inline bool torus_bias_ok(int L, double p, double tol = 1e-12) {
    return std::pow(1.0 - p, L - 2) < tol;
}

} // namespace seglat
