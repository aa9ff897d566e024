// Acceptance gate: one check per shipped guarantee, each printing a single
// PASS/FAIL line. Exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "seglat/csv.hpp"
#include "seglat/montecarlo.hpp"

using namespace seglat;

namespace {

constexpr std::uint64_t kSeed = 73;

bool within(double est, double target, double se, double n_sigma) {
    return std::abs(est - target) <= n_sigma * se;
}

// closed-form eigenvalue oracle for a 3x3 matrix (roots of the
// characteristic cubic), independent of the Eigen-based implementation
double cardano_radius(const Matrix3& m) {
    using C = std::complex<double>;
    const double tr = m[0][0] + m[1][1] + m[2][2];
    const double minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] +
                          m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                          m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    const double a2 = -tr, a1 = minors, a0 = -det;
    const double p = a1 - a2 * a2 / 3.0;
    const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    const C disc = std::sqrt(C(q * q / 4.0 + p * p * p / 27.0));
    C u = std::pow(-q / 2.0 + disc, 1.0 / 3.0);
    if (std::abs(u) < 1e-300) u = std::pow(-q / 2.0 - disc, 1.0 / 3.0);
    const C v = std::abs(u) > 0.0 ? C(-p / 3.0) / u : C(0.0);
    const C w(-0.5, std::sqrt(3.0) / 2.0);
    double rho = 0.0;
    C wk(1.0, 0.0);
    for (int k = 0; k < 3; ++k) {
        rho = std::max(rho, std::abs(wk * u + std::conj(wk) * v - a2 / 3.0));
        wk *= w;
    }
    return rho;
}

struct Check {
    std::string name;
    std::function<bool(std::string&)> run;
};

// 1. one-choice edge density is 7/16 at every p
bool check_edge_density(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    std::vector<EstimateWithCI> ests;
    for (double p : {0.2, 0.5, 0.8}) {
        const auto e = estimate_local_event({ModelTag::OneChoice, 2, p, 0.0},
                                            {LocalEventKind::EdgeBlue}, 128, 48,
                                            mix64(kSeed + 1));
        ok = ok && within(e.mean, 7.0 / 16.0, e.stderr_, 3.0);
        os << "p=" << p << ":" << e.mean << " ";
        ests.push_back(e);
    }
    for (std::size_t i = 0; i < ests.size(); ++i)
        for (std::size_t j = i + 1; j < ests.size(); ++j) {
            const double se = std::hypot(ests[i].stderr_, ests[j].stderr_);
            ok = ok && within(ests[i].mean, ests[j].mean, se, 4.0);
        }
    detail = os.str();
    return ok;
}

// 2. pair and vertex formulas on a (p, lambda) grid, plus the summation oracle
bool check_pair_formulas(std::string& detail) {
    bool ok = true;
    std::ostringstream os;
    const std::vector<double> ps{0.5, 0.65, 0.8};
    const std::vector<double> lams{0.2, 0.5, 0.8};
    std::uint64_t cell = 0;
    for (double p : ps) {
        const ModelSpec oc{ModelTag::OneChoice, 2, p, 0.0};
        const auto col = estimate_local_event(oc, {LocalEventKind::PairCollinear}, 128,
                                              32, mix64(kSeed + 100 + ++cell));
        const auto perp = estimate_local_event(oc, {LocalEventKind::PairPerp}, 128, 32,
                                               mix64(kSeed + 100 + ++cell));
        const auto vert = estimate_local_event(oc, {LocalEventKind::VertexBlue}, 128, 32,
                                               mix64(kSeed + 100 + ++cell));
        ok = ok && within(col.mean, collinear_pair_prob_one_choice(2, p), col.stderr_, 3.0);
        ok = ok && within(perp.mean, perp_pair_prob_one_choice(2, p), perp.stderr_, 3.0);
        ok = ok && within(vert.mean, vertex_blue_prob_one_choice(2, p), vert.stderr_, 3.0);
        for (auto kind : {LocalEventKind::EdgeBlue, LocalEventKind::PairCollinear,
                          LocalEventKind::PairPerp, LocalEventKind::VertexBlue}) {
            const auto r = truncated_sum_oracle(oc, {kind}, 60);
            const double target =
                kind == LocalEventKind::EdgeBlue        ? lambda_one_choice(2)
                : kind == LocalEventKind::PairCollinear ? collinear_pair_prob_one_choice(2, p)
                : kind == LocalEventKind::PairPerp      ? perp_pair_prob_one_choice(2, p)
                                                        : vertex_blue_prob_one_choice(2, p);
            ok = ok && r.tail_bound <= 1e-12 &&
                 std::abs(r.value - target) <= r.tail_bound + 1e-13;
        }
        for (double lam : lams) {
            const ModelSpec ind{ModelTag::Independent, 2, p, lam};
            const auto icol = estimate_local_event(ind, {LocalEventKind::PairCollinear},
                                                   128, 32, mix64(kSeed + 200 + ++cell));
            const auto iperp = estimate_local_event(ind, {LocalEventKind::PairPerp}, 128,
                                                    32, mix64(kSeed + 200 + ++cell));
            const auto ivert = estimate_local_event(ind, {LocalEventKind::VertexBlue},
                                                    128, 32, mix64(kSeed + 200 + ++cell));
            ok = ok && within(icol.mean, collinear_pair_prob_independent(p, lam),
                              icol.stderr_, 3.0);
            ok = ok && within(iperp.mean, lam * lam, iperp.stderr_, 3.0);
            ok = ok && within(ivert.mean, vertex_blue_prob_independent(2, p, lam),
                              ivert.stderr_, 3.0);
        }
    }
    os << "3x3 grid, both models, oracle tail <= 1e-12";
    detail = os.str();
    return ok;
}

// 3. collinear correlation decays like (1-p)^k
bool check_correlation(std::string& detail) {
    bool ok = true;
    std::ostringstream os;
    std::uint64_t cell = 0;
    for (double p : {0.5, 0.8}) {
        for (int k : {1, 2, 3}) {
            const auto e = estimate_local_event({ModelTag::Independent, 2, p, 0.5},
                                                {LocalEventKind::PairCollinearDistance, k},
                                                128, 64, mix64(kSeed + 300 + ++cell));
            const double target = collinear_corr_independent(p, k);
            ok = ok && within(e.mean, target, e.stderr_, 3.0);
            os << "p=" << p << ",k=" << k << ":" << e.mean << " ";
        }
    }
    detail = os.str();
    return ok;
}

// 4. pathwise coupling inclusions plus law equality of the derived coloring
bool check_couplings(std::string& detail) {
    std::int64_t violations = 0;
    for (int d : {2, 3}) {
        const Geometry g = torus(d, d == 2 ? 32 : 16);
        for (double p : {0.2, 0.5, 0.8}) {
            const std::uint64_t base = mix64(kSeed + 400 + d * 10 +
                                             static_cast<std::uint64_t>(p * 100));
            auto vio = run_replicates<double>(1000, [&](std::int64_t rep) {
                const SiteConfig cfg = sample_sites(g, p, derive_seed(base, rep, 1));
                const SegmentSet segs = feasible_segments(cfg);
                const auto [choices, blue] =
                    one_choice_blue(cfg, segs, derive_seed(base, rep, 2));
                const BlueEdgeSet turq = corrupted_compass_turquoise(cfg, choices);
                const BlueEdgeSet ind =
                    independent_blue(cfg, segs, 0.5, derive_seed(base, rep, 3));
                const BlueEdgeSet kept = restrict_independent_to_occupied_pairs(cfg, ind);
                return (blue.subset_of(turq) && kept.subset_of(ind)) ? 0.0 : 1.0;
            });
            for (double v : vio) violations += static_cast<std::int64_t>(v);
        }
    }

    // law equality of the derived coloring and the direct mixed model
    const double p = 0.8, lam = 0.5;
    const auto dens = estimate_local_event({ModelTag::MixedDerived, 2, p, lam},
                                           {LocalEventKind::EdgeBlue}, 64, 400,
                                           mix64(kSeed + 410));
    const auto wrap_derived = wrapping_probability({ModelTag::MixedDerived, 2, p, lam},
                                                   64, 400, mix64(kSeed + 411));
    const auto wrap_mixed = wrapping_probability({ModelTag::Mixed, 2, p, lam}, 64, 400,
                                                 mix64(kSeed + 412));
    const bool dens_ok = within(dens.mean, lam * p * p, dens.stderr_, 4.0);
    const bool wrap_ok = within(wrap_derived.mean, wrap_mixed.mean,
                                std::hypot(wrap_derived.stderr_, wrap_mixed.stderr_), 4.0);
    std::ostringstream os;
    os << violations << " inclusion violations; density " << dens.mean << " vs "
       << lam * p * p << "; wrap " << wrap_derived.mean << " vs " << wrap_mixed.mean;
    detail = os.str();
    return violations == 0 && dens_ok && wrap_ok;
}

// 5. spectral radius, threshold bisection, and the cubic-root oracle
bool check_compass(std::string& detail) {
    const double rho = compass_spectral_radius(2, 1.0);
    const double pstar = compass_threshold(2);
    const double resid = std::abs(compass_spectral_radius(2, pstar) - 1.0);
    // independent oracle: bisect the cubic-root radius to its own threshold
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (cardano_radius(compass_matrix(2, mid)) > 1.0 ? lo : hi) = mid;
    }
    const double pstar_oracle = 0.5 * (lo + hi);
    std::ostringstream os;
    os << "rho=" << rho << " p*=" << pstar << " residual=" << resid << " oracle p*="
       << pstar_oracle;
    detail = os.str();
    return std::abs(rho - 0.75) <= 1e-8 && resid < 1e-6 &&
           std::abs(pstar - pstar_oracle) < 1e-6;
}

// 6. finite-size critical-point estimates
bool check_critical_points(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    const auto oc2 = critical_search({ModelTag::OneChoice, 2, 0.5, 0.0}, VaryParam::P,
                                     0.40, 0.60, {64, 128}, 400, mix64(kSeed + 600));
    ok = ok && std::abs(oc2.estimate - 0.505) <= 0.03;
    os << "d2:" << oc2.estimate << " ";
    const auto oc3 = critical_search({ModelTag::OneChoice, 3, 0.5, 0.0}, VaryParam::P,
                                     0.76, 0.96, {16, 32}, 400, mix64(kSeed + 601));
    ok = ok && std::abs(oc3.estimate - 0.862) <= 0.05;
    os << "d3:" << oc3.estimate << " ";
    const auto ind = critical_search({ModelTag::Independent, 2, 1.0, 0.5},
                                     VaryParam::Lambda, 0.40, 0.60, {64, 128}, 400,
                                     mix64(kSeed + 602));
    ok = ok && std::abs(ind.estimate - 0.50) <= 0.02;
    os << "lambda(p=1):" << ind.estimate;
    detail = os.str();
    return ok;
}

// 7. deep inside the subcritical region nothing wraps
bool check_subcritical_region(std::string& detail) {
    const auto e = wrapping_probability({ModelTag::Independent, 2, 0.9, 0.25}, 256, 400,
                                        mix64(kSeed + 700));
    std::ostringstream os;
    os << "wrap=" << e.mean << " at (p,lambda)=(0.9,0.25), L=256";
    detail = os.str();
    return e.mean <= 0.05;
}

// 8. block-event probabilities against their closed forms
bool check_block_events(std::string& detail) {
    const BlockParams bpA{1, 0.5, 7.0 / 16.0};
    const auto estA = block_event_mc(bpA, 100000, mix64(kSeed + 800));
    const bool okA = within(estA.A.mean, block_event_A_prob(bpA), estA.A.stderr_, 3.0);
    const BlockParams bpC{3, std::pow(2.0, -1.0 / 3.0), 0.5};
    const auto estC = block_event_mc(bpC, 100000, mix64(kSeed + 801));
    const bool okC = estC.C.has_value() &&
                     within(estC.C->mean, block_event_C_prob(bpC), estC.C->stderr_, 3.0);
    std::ostringstream os;
    os << "A:" << estA.A.mean << " vs " << block_event_A_prob(bpA) << "; C:"
       << (estC.C ? estC.C->mean : -1.0) << " vs " << block_event_C_prob(bpC);
    detail = os.str();
    return okA && okC;
}

// 9. endpoints and monotonicity of the mixed-model critical curve
bool check_mixed_curve(std::string& detail) {
    const auto res = mixed_curve_estimate(2, {0.55, 0.65, 0.75, 0.85, 1.0}, 128, 300,
                                          mix64(kSeed + 900));
    bool ok = res.points.size() == 5;
    std::ostringstream os;
    if (ok) {
        ok = ok && res.points[0].pinned && res.points[0].lambda_c == 1.0;
        const auto& last = res.points.back();
        ok = ok && !last.pinned && std::abs(last.lambda_c - 0.50) <= 0.02;
        for (std::size_t i = 2; i < res.points.size(); ++i) {
            const auto& a = res.points[i - 1];
            const auto& b = res.points[i];
            ok = ok && (a.lambda_c - b.lambda_c > a.ci_halfwidth + b.ci_halfwidth);
        }
        for (const auto& pt : res.points)
            os << "p=" << pt.p << (pt.pinned ? ":pinned " : ":") << pt.lambda_c << " ";
    }
    detail = os.str();
    return ok;
}

// 10. byte-identical CSV output for any thread count
bool check_determinism(std::string& detail) {
    auto csv_with = [&](int threads) {
        const ModelSpec ms{ModelTag::Independent, 2, 0.5, 0.4};
        const SweepResult sweep =
            frontier_sweep(ms, {0.4, 0.5}, {0.3, 0.45}, 32, 24, kSeed + 1000, threads);
        const auto est = estimate_local_event(ms, {LocalEventKind::EdgeBlue}, 64, 24,
                                              kSeed + 1001, threads);
        std::ostringstream os;
        auto rows = sweep_to_csv(sweep);
        rows.push_back({"independent", 2, 64, "torus", 0.5, 0.4, est.replicates,
                        "edge_blue", est.mean, est.stderr_, est.master_seed});
        write_csv(os, rows);
        return os.str();
    };
    const std::string one = csv_with(1);
    const std::string four = csv_with(4);
    const std::string three = csv_with(3);
    detail = one == four && one == three ? "identical CSV for 1/3/4 threads"
                                         : "outputs differ across thread counts";
    return one == four && one == three;
}

} // namespace

int main() {
    const std::vector<Check> checks = {
        {"one-choice-edge-density", check_edge_density},
        {"pair-and-vertex-formulas", check_pair_formulas},
        {"collinear-correlation-decay", check_correlation},
        {"coupling-inclusions-and-law", check_couplings},
        {"compass-spectral-criterion", check_compass},
        {"critical-point-estimates", check_critical_points},
        {"subcritical-non-wrapping", check_subcritical_region},
        {"block-event-probabilities", check_block_events},
        {"mixed-critical-curve", check_mixed_curve},
        {"thread-count-determinism", check_determinism},
    };
    int failures = 0;
    for (const auto& c : checks) {
        std::string detail;
        bool pass = false;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %-30s (%.1fs) %s\n", pass ? "PASS" : "FAIL", c.name.c_str(),
                    secs, detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
