#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "seglat/coloring.hpp"

namespace seglat {

namespace detail {

inline const char kB64[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

inline std::string base64_encode(const std::vector<std::uint64_t>& words) {
    std::vector<unsigned char> bytes;
    bytes.reserve(words.size() * 8);
    for (std::uint64_t w : words)
        for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<unsigned char>(w >> (8 * i)));
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    for (std::size_t i = 0; i < bytes.size(); i += 3) {
        std::uint32_t v = bytes[i] << 16;
        if (i + 1 < bytes.size()) v |= bytes[i + 1] << 8;
        if (i + 2 < bytes.size()) v |= bytes[i + 2];
        out += kB64[(v >> 18) & 63];
        out += kB64[(v >> 12) & 63];
        out += i + 1 < bytes.size() ? kB64[(v >> 6) & 63] : '=';
        out += i + 2 < bytes.size() ? kB64[v & 63] : '=';
    }
    return out;
}

inline std::vector<std::uint64_t> base64_decode(const std::string& s, std::size_t n_words) {
    std::vector<unsigned char> bytes;
    bytes.reserve(s.size() / 4 * 3);
    int val = 0, bits = 0;
    for (char c : s) {
        if (c == '=') break;
        const char* pos = std::char_traits<char>::find(kB64, 64, c);
        if (!pos) throw std::invalid_argument("base64_decode: bad character");
        val = (val << 6) | static_cast<int>(pos - kB64);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            bytes.push_back(static_cast<unsigned char>((val >> bits) & 0xff));
        }
    }
    if (bytes.size() < n_words * 8) throw std::invalid_argument("base64_decode: short payload");
    std::vector<std::uint64_t> words(n_words, 0);
    for (std::size_t i = 0; i < n_words; ++i)
        for (int b = 0; b < 8; ++b)
            words[i] |= static_cast<std::uint64_t>(bytes[i * 8 + b]) << (8 * b);
    return words;
}

inline nlohmann::json geometry_to_json(const Geometry& g) {
    return {{"d", g.d},
            {"lengths", g.lengths},
            {"boundary", g.boundary == Boundary::Torus ? "torus" : "free"}};
}

inline Geometry geometry_from_json(const nlohmann::json& j) {
    const std::string b = j.at("boundary");
    return make_geometry(j.at("d"), j.at("lengths").get<std::vector<int>>(),
                         b == "torus" ? Boundary::Torus : Boundary::Free);
}

} // namespace detail

inline nlohmann::json to_json(const SiteConfig& cfg) {
    nlohmann::json j = detail::geometry_to_json(cfg.geometry);
    j["p"] = cfg.p;
    j["site_seed"] = cfg.site_seed;
    j["occupied"] = detail::base64_encode(cfg.bits);
    return j;
}

inline SiteConfig site_config_from_json(const nlohmann::json& j) {
    SiteConfig cfg;
    cfg.geometry = detail::geometry_from_json(j);
    cfg.p = j.at("p");
    cfg.site_seed = j.at("site_seed");
    cfg.bits = detail::base64_decode(j.at("occupied"),
                                     (cfg.geometry.n_sites + 63) / 64);
    return cfg;
}

inline nlohmann::json to_json(const BlueEdgeSet& b) {
    nlohmann::json j = detail::geometry_to_json(b.geometry);
    j["model"] = to_string(b.model_tag);
    j["p"] = b.p;
    j["lambda"] = b.lambda;
    j["site_seed"] = b.site_seed;
    j["color_seed"] = b.color_seed;
    j["blue"] = detail::base64_encode(b.bits);
    return j;
}

inline BlueEdgeSet blue_edge_set_from_json(const nlohmann::json& j) {
    BlueEdgeSet b;
    b.geometry = detail::geometry_from_json(j);
    const std::string m = j.at("model");
    if (m == "one-choice") b.model_tag = ModelTag::OneChoice;
    else if (m == "independent") b.model_tag = ModelTag::Independent;
    else if (m == "corrupted-compass") b.model_tag = ModelTag::CorruptedCompass;
    else if (m == "mixed") b.model_tag = ModelTag::Mixed;
    else if (m == "mixed-derived") b.model_tag = ModelTag::MixedDerived;
    else throw std::invalid_argument("blue_edge_set_from_json: unknown model tag");
    b.p = j.at("p");
    b.lambda = j.at("lambda");
    b.site_seed = j.at("site_seed");
    b.color_seed = j.at("color_seed");
    b.bits = detail::base64_decode(j.at("blue"), (b.geometry.n_edges() + 63) / 64);
    return b;
}

} // namespace seglat
