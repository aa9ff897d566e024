#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

#include "seglat/cluster.hpp"

namespace seglat {

struct RenderOptions {
    double cell = 10.0;       // pixels per lattice spacing
    bool highlight_left = true; // darken clusters touching the left boundary
    bool omit_plain = false;  // drop occupied sites with no incident blue edge
};

// Draws the blue edges of a free-boundary 2-d window. Segments that would
// cross the wall are absent by construction; clusters touching the left
// boundary can be drawn in a darker shade.
inline std::string render_svg(const SiteConfig& cfg, const BlueEdgeSet& blue,
                              const RenderOptions& opt = {}) {
    const Geometry& g = cfg.geometry;
    if (g.boundary != Boundary::Free)
        throw std::invalid_argument("render_svg: free-boundary input required");
    if (g.d != 2) throw std::invalid_argument("render_svg: 2-d input required");

    const ClusterReport rep = clusters(g, blue);
    std::vector<std::uint8_t> dark(rep.component_count(), 0);
    if (opt.highlight_left) {
        for (std::int64_t s = 0; s < g.n_sites; ++s)
            if (g.coord(s, 0) == 0 && rep.component_of[s] >= 0)
                dark[rep.component_of[s]] = 1;
    }

    const int Lx = g.lengths[0], Ly = g.lengths[1];
    const double pad = opt.cell;
    auto px = [&](std::int64_t s) { return pad + opt.cell * g.coord(s, 0); };
    auto py = [&](std::int64_t s) { return pad + opt.cell * (Ly - 1 - g.coord(s, 1)); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
       << pad * 2 + opt.cell * (Lx - 1) << "\" height=\""
       << pad * 2 + opt.cell * (Ly - 1) << "\">\n";

    for (std::int64_t e = 0; e < g.n_edges(); ++e) {
        if (!blue.blue(e)) continue;
        const std::int64_t u = g.edge_site(e);
        const std::int64_t v = g.edge_other(e);
        const bool is_dark = rep.component_of[u] >= 0 && dark[rep.component_of[u]];
        os << "<line x1=\"" << px(u) << "\" y1=\"" << py(u) << "\" x2=\"" << px(v)
           << "\" y2=\"" << py(v) << "\" stroke=\""
           << (is_dark ? "#102a6e" : "#4a7bd4") << "\" stroke-width=\"2\"/>\n";
    }

    for (std::int64_t s = 0; s < g.n_sites; ++s) {
        if (!cfg.occupied(s)) continue;
        const bool is_blue_site = rep.component_of[s] >= 0;
        if (!is_blue_site && opt.omit_plain) continue;
        const char* fill = !is_blue_site                   ? "#bbbbbb"
                           : dark[rep.component_of[s]] != 0 ? "#102a6e"
                                                            : "#4a7bd4";
        os << "<circle cx=\"" << px(s) << "\" cy=\"" << py(s) << "\" r=\""
           << opt.cell * 0.18 << "\" fill=\"" << fill << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace seglat
