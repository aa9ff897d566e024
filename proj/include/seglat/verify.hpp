#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "seglat/csv.hpp"
#include "seglat/montecarlo.hpp"

namespace seglat {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t master_seed = 20190819;
    int threads = 0;
    std::string only;        // substring filter on check names
    bool inject_fault = false; // deliberately corrupt one check (harness self-test)
};

namespace detail {

inline bool within_sigma(double est, double target, double se, double n_sigma) {
    return std::abs(est - target) <= n_sigma * se;
}

inline std::string sigma_detail(double est, double target, double se) {
    std::ostringstream os;
    os << "estimate " << est << " target " << target << " stderr " << se;
    return os.str();
}

} // namespace detail

// Analytic-vs-MC agreement plus the two coupling inclusions, at scales
// that finish in roughly a minute.
inline std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
    std::vector<CheckResult> results;
    auto wants = [&](const std::string& name) {
        return opt.only.empty() || name.find(opt.only) != std::string::npos;
    };
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        results.push_back({name, pass, detail});
    };
    const std::uint64_t seed = opt.master_seed;
    const int threads = opt.threads;

    if (wants("formula.edge-blue.one-choice")) {
        const ModelSpec ms{ModelTag::OneChoice, 2, 0.5, 0.0};
        const auto e = estimate_local_event(ms, {LocalEventKind::EdgeBlue}, 128, 48,
                                            mix64(seed + 1), threads);
        add("formula.edge-blue.one-choice",
            detail::within_sigma(e.mean, lambda_one_choice(2), e.stderr_, 4.0),
            detail::sigma_detail(e.mean, lambda_one_choice(2), e.stderr_));
    }
    if (wants("formula.edge-blue.independent")) {
        const ModelSpec ms{ModelTag::Independent, 2, 0.5, 0.3};
        const auto e = estimate_local_event(ms, {LocalEventKind::EdgeBlue}, 128, 48,
                                            mix64(seed + 2), threads);
        add("formula.edge-blue.independent",
            detail::within_sigma(e.mean, 0.3, e.stderr_, 4.0),
            detail::sigma_detail(e.mean, 0.3, e.stderr_));
    }
    if (wants("formula.pairs.one-choice")) {
        const ModelSpec ms{ModelTag::OneChoice, 2, 0.5, 0.0};
        const auto col = estimate_local_event(ms, {LocalEventKind::PairCollinear}, 128,
                                              48, mix64(seed + 3), threads);
        const auto perp = estimate_local_event(ms, {LocalEventKind::PairPerp}, 128, 48,
                                               mix64(seed + 4), threads);
        const bool ok =
            detail::within_sigma(col.mean, collinear_pair_prob_one_choice(2, 0.5),
                                 col.stderr_, 4.0) &&
            detail::within_sigma(perp.mean, perp_pair_prob_one_choice(2, 0.5),
                                 perp.stderr_, 4.0);
        add("formula.pairs.one-choice", ok,
            detail::sigma_detail(col.mean, collinear_pair_prob_one_choice(2, 0.5),
                                 col.stderr_));
    }
    if (wants("formula.vertex-blue")) {
        const ModelSpec oc{ModelTag::OneChoice, 2, 0.5, 0.0};
        const ModelSpec ind{ModelTag::Independent, 2, 0.5, 0.3};
        const auto v1 = estimate_local_event(oc, {LocalEventKind::VertexBlue}, 128, 48,
                                             mix64(seed + 5), threads);
        const auto v2 = estimate_local_event(ind, {LocalEventKind::VertexBlue}, 128, 48,
                                             mix64(seed + 6), threads);
        const bool ok =
            detail::within_sigma(v1.mean, vertex_blue_prob_one_choice(2, 0.5),
                                 v1.stderr_, 4.0) &&
            detail::within_sigma(v2.mean, vertex_blue_prob_independent(2, 0.5, 0.3),
                                 v2.stderr_, 4.0);
        add("formula.vertex-blue", ok,
            detail::sigma_detail(v1.mean, vertex_blue_prob_one_choice(2, 0.5),
                                 v1.stderr_));
    }
    if (wants("formula.correlation.independent")) {
        const ModelSpec ms{ModelTag::Independent, 2, 0.8, 0.3};
        const auto e = estimate_local_event(ms, {LocalEventKind::PairCollinearDistance, 1},
                                            128, 48, mix64(seed + 7), threads);
        add("formula.correlation.independent",
            detail::within_sigma(e.mean, collinear_corr_independent(0.8, 1), e.stderr_, 4.0),
            detail::sigma_detail(e.mean, 0.2, e.stderr_));
    }
    if (wants("compass.spectral-radius")) {
        const double rho = compass_spectral_radius(2, 1.0);
        const double pstar = compass_threshold(2);
        const double resid = std::abs(compass_spectral_radius(2, pstar) - 1.0);
        const bool ok = std::abs(rho - 0.75) < 1e-8 && resid < 1e-6;
        std::ostringstream os;
        os << "rho(2,1) " << rho << " threshold " << pstar << " residual " << resid;
        add("compass.spectral-radius", ok, os.str());
    }
    if (wants("coupling.compass-inclusion")) {
        std::int64_t violations = 0;
        const Geometry g = torus(2, 32);
        for (std::int64_t rep = 0; rep < 200; ++rep) {
            const SiteConfig cfg = sample_sites(g, 0.5, derive_seed(seed + 8, rep, 1));
            const SegmentSet segs = feasible_segments(cfg);
            auto [choices, blue] = one_choice_blue(cfg, segs, derive_seed(seed + 8, rep, 2));
            const BlueEdgeSet turq = corrupted_compass_turquoise(cfg, choices);
            if (!blue.subset_of(turq)) ++violations;
        }
        if (opt.inject_fault) ++violations;
        std::ostringstream os;
        os << violations << " violations in 200 replicates";
        add("coupling.compass-inclusion", violations == 0, os.str());
    }
    if (wants("coupling.mixed-domination")) {
        std::int64_t violations = 0;
        const Geometry g = torus(2, 64);
        std::vector<double> dens;
        for (std::int64_t rep = 0; rep < 200; ++rep) {
            const SiteConfig cfg = sample_sites(g, 0.8, derive_seed(seed + 9, rep, 1));
            const SegmentSet segs = feasible_segments(cfg);
            const BlueEdgeSet blue =
                independent_blue(cfg, segs, 0.5, derive_seed(seed + 9, rep, 2));
            const BlueEdgeSet kept = restrict_independent_to_occupied_pairs(cfg, blue);
            if (!kept.subset_of(blue)) ++violations;
            dens.push_back(static_cast<double>(kept.blue_count()) /
                           static_cast<double>(g.n_edges()));
        }
        const auto e = summarize(dens, seed + 9);
        const double target = 0.5 * 0.8 * 0.8;
        const bool ok = violations == 0 &&
                        detail::within_sigma(e.mean, target, e.stderr_, 4.0);
        add("coupling.mixed-domination", ok,
            detail::sigma_detail(e.mean, target, e.stderr_));
    }
    if (wants("block.event-a")) {
        const BlockParams bp{1, 0.5, 7.0 / 16.0};
        const auto est = block_event_mc(bp, 40000, mix64(seed + 10), threads);
        const double target = block_event_A_prob(bp);
        add("block.event-a",
            detail::within_sigma(est.A.mean, target, est.A.stderr_, 4.0),
            detail::sigma_detail(est.A.mean, target, est.A.stderr_));
    }
    if (wants("oracle.truncated-sum")) {
        const ModelSpec oc{ModelTag::OneChoice, 2, 0.5, 0.0};
        const auto r = truncated_sum_oracle(oc, {LocalEventKind::EdgeBlue}, 60);
        const bool ok = std::abs(r.value - lambda_one_choice(2)) <= r.tail_bound &&
                        r.tail_bound <= 1e-12;
        std::ostringstream os;
        os << "value " << r.value << " tail " << r.tail_bound;
        add("oracle.truncated-sum", ok, os.str());
    }
    return results;
}

} // namespace seglat
