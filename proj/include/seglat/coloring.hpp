#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seglat/segments.hpp"

namespace seglat {

enum class ModelTag { OneChoice, Independent, CorruptedCompass, Mixed, MixedDerived };

inline std::string to_string(ModelTag t) {
    switch (t) {
        case ModelTag::OneChoice: return "one-choice";
        case ModelTag::Independent: return "independent";
        case ModelTag::CorruptedCompass: return "corrupted-compass";
        case ModelTag::Mixed: return "mixed";
        case ModelTag::MixedDerived: return "mixed-derived";
    }
    return "?";
}

// One chosen direction per occupied site (0xff elsewhere).
struct ChoiceAssignment {
    std::vector<std::uint8_t> chosen;
    std::uint64_t choice_seed = 0;

    bool defined(std::int64_t site) const { return chosen[site] != 0xff; }
    Direction direction(std::int64_t site) const {
        return Direction::decode(chosen[site]);
    }
};

// Per-unit-edge blue flags. Edge ids follow Geometry: e = site*d + axis.
struct BlueEdgeSet {
    Geometry geometry;
    std::vector<std::uint64_t> bits;
    ModelTag model_tag = ModelTag::Independent;
    double p = 0.0;
    double lambda = 0.0;
    std::uint64_t site_seed = 0;
    std::uint64_t color_seed = 0;

    static BlueEdgeSet empty(const Geometry& g, ModelTag tag) {
        BlueEdgeSet b;
        b.geometry = g;
        b.model_tag = tag;
        b.bits.assign((g.n_edges() + 63) / 64, 0);
        return b;
    }
    bool blue(std::int64_t e) const { return (bits[e >> 6] >> (e & 63)) & 1u; }
    void set_blue(std::int64_t e) { bits[e >> 6] |= std::uint64_t{1} << (e & 63); }
    std::int64_t blue_count() const {
        std::int64_t n = 0;
        for (auto w : bits) n += std::popcount(w);
        return n;
    }
    // true iff every blue edge of this set is blue in `other`
    bool subset_of(const BlueEdgeSet& other) const {
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i] & ~other.bits[i]) return false;
        return true;
    }
};

namespace detail {

// Mark every unit edge of a segment blue.
inline void paint_segment(BlueEdgeSet& out, const Segment& s) {
    const Geometry& g = out.geometry;
    std::int64_t cur = s.a;
    const int n = s.edge_count(g);
    for (int i = 0; i < n; ++i) {
        out.set_blue(cur * g.d + s.axis);
        cur = g.neighbor(cur, Direction{s.axis, +1});
    }
}

inline ChoiceAssignment draw_choices(const SiteConfig& cfg, std::uint64_t choice_seed) {
    const Geometry& g = cfg.geometry;
    ChoiceAssignment ca;
    ca.choice_seed = choice_seed;
    ca.chosen.assign(g.n_sites, 0xff);
    RngStream rng(choice_seed, 0, StreamRole::Choices);
    for (std::int64_t s = 0; s < g.n_sites; ++s)
        if (cfg.occupied(s))
            ca.chosen[s] = static_cast<std::uint8_t>(rng.below_at(s, 2 * g.d));
    return ca;
}

} // namespace detail

// Each occupied site draws one of its 2d directions uniformly and declares
// the segment reached in that direction green; a segment is blue iff some
// endpoint declared it green.
inline std::pair<ChoiceAssignment, BlueEdgeSet>
one_choice_blue(const SiteConfig& cfg, const SegmentSet& segs, std::uint64_t choice_seed) {
    const Geometry& g = cfg.geometry;
    ChoiceAssignment ca = detail::draw_choices(cfg, choice_seed);
    BlueEdgeSet out = BlueEdgeSet::empty(g, ModelTag::OneChoice);
    out.p = cfg.p;
    out.site_seed = cfg.site_seed;
    out.color_seed = choice_seed;

    std::vector<std::uint8_t> seg_blue(segs.segments.size(), 0);
    for (std::int64_t s = 0; s < g.n_sites; ++s) {
        if (!cfg.occupied(s)) continue;
        const std::int32_t id = segs.incident[s * 2 * g.d + ca.chosen[s]];
        if (id >= 0) seg_blue[id] = 1; // -1 only next to a free-box wall
    }
    for (std::size_t i = 0; i < seg_blue.size(); ++i)
        if (seg_blue[i]) detail::paint_segment(out, segs.segments[i]);
    return {std::move(ca), std::move(out)};
}

// Each feasible segment is blue independently with probability lambda.
inline BlueEdgeSet independent_blue(const SiteConfig& cfg, const SegmentSet& segs,
                                    double lambda, std::uint64_t color_seed) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("independent_blue: lambda must lie in [0,1]");
    BlueEdgeSet out = BlueEdgeSet::empty(cfg.geometry, ModelTag::Independent);
    out.p = cfg.p;
    out.lambda = lambda;
    out.site_seed = cfg.site_seed;
    out.color_seed = color_seed;
    RngStream rng(color_seed, 0, StreamRole::SegmentCoins);
    for (std::size_t i = 0; i < segs.segments.size(); ++i)
        if (rng.bernoulli_at(i, lambda)) detail::paint_segment(out, segs.segments[i]);
    return out;
}

// Edge (u,v) is turquoise iff some endpoint is unoccupied, or is occupied
// with the edge lying along its chosen direction. Shares `choices` with
// one_choice_blue, which makes the one-choice blue set a subset of this.
inline BlueEdgeSet corrupted_compass_turquoise(const SiteConfig& cfg,
                                               const ChoiceAssignment& choices) {
    const Geometry& g = cfg.geometry;
    BlueEdgeSet out = BlueEdgeSet::empty(g, ModelTag::CorruptedCompass);
    out.p = cfg.p;
    out.site_seed = cfg.site_seed;
    out.color_seed = choices.choice_seed;
    for (std::int64_t e = 0; e < g.n_edges(); ++e) {
        if (!g.edge_valid(e)) continue;
        const std::int64_t u = g.edge_site(e);
        const std::int64_t v = g.edge_other(e);
        const int axis = g.edge_axis(e);
        const bool t =
            !cfg.occupied(u) || !cfg.occupied(v) ||
            choices.direction(u) == Direction{axis, +1} ||
            choices.direction(v) == Direction{axis, -1};
        if (t) out.set_blue(e);
    }
    return out;
}

// A unit edge is open iff both endpoints are occupied and an independent
// Bernoulli(lambda) coin succeeds.
inline BlueEdgeSet mixed_percolation(const SiteConfig& cfg, double lambda,
                                     std::uint64_t color_seed) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("mixed_percolation: lambda must lie in [0,1]");
    const Geometry& g = cfg.geometry;
    BlueEdgeSet out = BlueEdgeSet::empty(g, ModelTag::Mixed);
    out.p = cfg.p;
    out.lambda = lambda;
    out.site_seed = cfg.site_seed;
    out.color_seed = color_seed;
    RngStream rng(color_seed, 0, StreamRole::EdgeCoins);
    for (std::int64_t e = 0; e < g.n_edges(); ++e) {
        if (!g.edge_valid(e)) continue;
        if (cfg.occupied(g.edge_site(e)) && cfg.occupied(g.edge_other(e)) &&
            rng.bernoulli_at(e, lambda))
            out.set_blue(e);
    }
    return out;
}

// Keep exactly the blue unit edges whose endpoints are both occupied.
// The law of the result equals the mixed model at the same (p, lambda).
inline BlueEdgeSet restrict_independent_to_occupied_pairs(const SiteConfig& cfg,
                                                          const BlueEdgeSet& blue) {
    const Geometry& g = cfg.geometry;
    BlueEdgeSet out = BlueEdgeSet::empty(g, ModelTag::MixedDerived);
    out.p = cfg.p;
    out.lambda = blue.lambda;
    out.site_seed = cfg.site_seed;
    out.color_seed = blue.color_seed;
    for (std::int64_t e = 0; e < g.n_edges(); ++e) {
        if (!blue.blue(e)) continue;
        if (cfg.occupied(g.edge_site(e)) && cfg.occupied(g.edge_other(e)))
            out.set_blue(e);
    }
    return out;
}

} // namespace seglat
