#include <catch_amalgamated.hpp>

#include "seglat/montecarlo.hpp"
#include "seglat/serialize.hpp"
#include "seglat/svg.hpp"

using namespace seglat;

TEST_CASE("site configurations round-trip through JSON") {
    const Geometry g = make_geometry(2, {17, 9}, Boundary::Torus);
    const SiteConfig cfg = sample_sites(g, 0.42, 1234);
    const SiteConfig back = site_config_from_json(to_json(cfg));
    REQUIRE(back.bits == cfg.bits);
    REQUIRE(back.p == cfg.p);
    REQUIRE(back.site_seed == cfg.site_seed);
    REQUIRE(back.geometry.d == 2);
    REQUIRE(back.geometry.lengths == std::vector<int>{17, 9});
    REQUIRE(back.geometry.boundary == Boundary::Torus);
}

TEST_CASE("blue edge sets round-trip through JSON for every model") {
    const Geometry g = make_geometry(2, {12, 12}, Boundary::Torus);
    const SiteConfig cfg = sample_sites(g, 0.5, 55);
    const SegmentSet segs = feasible_segments(cfg);
    std::vector<BlueEdgeSet> sets;
    sets.push_back(one_choice_blue(cfg, segs, 56).second);
    sets.push_back(independent_blue(cfg, segs, 0.3, 57));
    sets.push_back(mixed_percolation(cfg, 0.6, 58));
    sets.push_back(restrict_independent_to_occupied_pairs(cfg, sets[1]));
    for (const BlueEdgeSet& b : sets) {
        const BlueEdgeSet back = blue_edge_set_from_json(to_json(b));
        REQUIRE(back.bits == b.bits);
        REQUIRE(back.model_tag == b.model_tag);
        REQUIRE(back.p == b.p);
        REQUIRE(back.lambda == b.lambda);
        REQUIRE(back.site_seed == b.site_seed);
        REQUIRE(back.color_seed == b.color_seed);
    }
}

TEST_CASE("serialization rejects corrupt payloads") {
    const Geometry g = make_geometry(2, {8, 8}, Boundary::Torus);
    const SiteConfig cfg = sample_sites(g, 0.5, 3);
    nlohmann::json j = to_json(cfg);
    j["occupied"] = "AA==";
    REQUIRE_THROWS_AS(site_config_from_json(j), std::invalid_argument);
    j["occupied"] = "!notbase64!";
    REQUIRE_THROWS_AS(site_config_from_json(j), std::invalid_argument);
}

TEST_CASE("rendering requires a 2-d free-boundary window") {
    const Geometry torus2 = make_geometry(2, {8, 8}, Boundary::Torus);
    const SiteConfig tcfg = sample_sites(torus2, 0.6, 5);
    const BlueEdgeSet tblue = mixed_percolation(tcfg, 0.5, 6);
    REQUIRE_THROWS_AS(render_svg(tcfg, tblue), std::invalid_argument);

    const Geometry box = make_geometry(2, {10, 10}, Boundary::Free);
    const SiteConfig cfg = sample_sites(box, 0.6, 7);
    const BlueEdgeSet blue = one_choice_blue(cfg, feasible_segments(cfg), 8).second;
    const std::string svg = render_svg(cfg, blue);
    REQUIRE(svg.rfind("<svg", 0) == 0);
    REQUIRE(svg.find("</svg>") != std::string::npos);
    REQUIRE(svg.find("<circle") != std::string::npos);
    // omitting plain sites can only shrink the drawing
    RenderOptions opt;
    opt.omit_plain = true;
    REQUIRE(render_svg(cfg, blue, opt).size() <= svg.size());
}
