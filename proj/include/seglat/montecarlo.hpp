#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "seglat/analytic.hpp"
#include "seglat/cluster.hpp"
#include "seglat/coloring.hpp"

namespace seglat {

// ---------------------------------------------------------------------------
// Replicated estimation
// ---------------------------------------------------------------------------

struct EstimateWithCI {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::int64_t replicates = 0;
    std::uint64_t master_seed = 0;
    std::vector<double> per_replicate_values; // retained only on request
};

inline EstimateWithCI summarize(const std::vector<double>& values,
                                std::uint64_t master_seed, bool keep_values = false) {
    const auto n = static_cast<std::int64_t>(values.size());
    if (n < 2) throw std::invalid_argument("summarize: need at least 2 replicates");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    EstimateWithCI e;
    e.mean = mean;
    e.stderr_ = std::sqrt(ss / (static_cast<double>(n) * (n - 1.0)));
    e.replicates = n;
    e.master_seed = master_seed;
    if (keep_values) e.per_replicate_values = values;
    return e;
}

inline int default_thread_count() {
    if (const char* env = std::getenv("SEGLAT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned n = std::thread::hardware_concurrency();
    return n ? static_cast<int>(n) : 1;
}

// Runs fn(rep) for rep in [0, n). Each replicate derives its own RNG
// streams from the master seed, and results land in a vector indexed by
// replicate, so the output is identical for any thread count.
template <typename T, typename Fn>
std::vector<T> run_replicates(std::int64_t n, Fn&& fn, int threads = 0) {
    if (threads <= 0) threads = default_thread_count();
    threads = static_cast<int>(std::min<std::int64_t>(threads, std::max<std::int64_t>(n, 1)));
    std::vector<T> out(n);
    if (threads <= 1) {
        for (std::int64_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::int64_t i = t; i < n; i += threads) out[i] = fn(i);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

// Per-replicate seeds: salt separates roles, golden-ratio stepping
// separates replicates.
inline std::uint64_t derive_seed(std::uint64_t master, std::int64_t rep, std::uint64_t salt) {
    return mix64(mix64(master + kGolden * salt) + kGolden * static_cast<std::uint64_t>(rep));
}

// ---------------------------------------------------------------------------
// Model specification
// ---------------------------------------------------------------------------

struct ModelSpec {
    ModelTag model = ModelTag::Independent;
    int d = 2;
    double p = 0.5;
    double lambda = 0.5; // unused by the one-choice model
};

inline BlueEdgeSet replicate_blue(const Geometry& g, const ModelSpec& ms,
                                  std::uint64_t master_seed, std::int64_t rep) {
    const std::uint64_t site_seed = derive_seed(master_seed, rep, 1);
    const std::uint64_t color_seed = derive_seed(master_seed, rep, 2);
    const SiteConfig cfg = sample_sites(g, ms.p, site_seed);
    switch (ms.model) {
        case ModelTag::OneChoice:
            return one_choice_blue(cfg, feasible_segments(cfg), color_seed).second;
        case ModelTag::Independent:
            return independent_blue(cfg, feasible_segments(cfg), ms.lambda, color_seed);
        case ModelTag::Mixed:
            return mixed_percolation(cfg, ms.lambda, color_seed);
        case ModelTag::MixedDerived: {
            const SegmentSet segs = feasible_segments(cfg);
            return restrict_independent_to_occupied_pairs(
                cfg, independent_blue(cfg, segs, ms.lambda, color_seed));
        }
        case ModelTag::CorruptedCompass: {
            const ChoiceAssignment ca = detail::draw_choices(cfg, color_seed);
            return corrupted_compass_turquoise(cfg, ca);
        }
    }
    throw std::logic_error("replicate_blue: unknown model");
}

inline Geometry torus(int d, int L) {
    return make_geometry(d, std::vector<int>(d, L), Boundary::Torus);
}

// ---------------------------------------------------------------------------
// Local-event estimation (translation-averaged on the torus)
// ---------------------------------------------------------------------------

enum class LocalEventKind { EdgeBlue, VertexBlue, PairCollinear, PairPerp, PairCollinearDistance };

struct LocalEvent {
    LocalEventKind kind = LocalEventKind::EdgeBlue;
    int k = 1; // distance for PairCollinearDistance
};

namespace detail {

inline std::int64_t shifted_site(const Geometry& g, std::int64_t s, int axis, int k) {
    const int c = g.coord(s, axis);
    const int c2 = (c + k) % g.lengths[axis];
    return s + static_cast<std::int64_t>(c2 - c) * g.strides[axis];
}

inline double translation_average(const Geometry& g, const BlueEdgeSet& b,
                                  const LocalEvent& ev) {
    const int d = g.d;
    switch (ev.kind) {
        case LocalEventKind::EdgeBlue:
            return static_cast<double>(b.blue_count()) / static_cast<double>(g.n_edges());
        case LocalEventKind::VertexBlue: {
            std::int64_t hits = 0;
            for (std::int64_t s = 0; s < g.n_sites; ++s) {
                bool any = false;
                for (int a = 0; a < d && !any; ++a) {
                    if (b.blue(s * d + a)) any = true;
                    else if (b.blue(g.neighbor(s, Direction{a, -1}) * d + a)) any = true;
                }
                hits += any;
            }
            return static_cast<double>(hits) / static_cast<double>(g.n_sites);
        }
        case LocalEventKind::PairCollinear: {
            std::int64_t hits = 0;
            for (std::int64_t s = 0; s < g.n_sites; ++s)
                for (int a = 0; a < d; ++a)
                    hits += b.blue(s * d + a) &&
                            b.blue(g.neighbor(s, Direction{a, -1}) * d + a);
            return static_cast<double>(hits) / static_cast<double>(g.n_sites * d);
        }
        case LocalEventKind::PairPerp: {
            std::int64_t hits = 0, pairs = 0;
            for (std::int64_t s = 0; s < g.n_sites; ++s)
                for (int a = 0; a < d; ++a)
                    for (int b2 = a + 1; b2 < d; ++b2)
                        hits += b.blue(s * d + a) && b.blue(s * d + b2);
            pairs = g.n_sites * (static_cast<std::int64_t>(d) * (d - 1) / 2);
            return static_cast<double>(hits) / static_cast<double>(pairs);
        }
        case LocalEventKind::PairCollinearDistance: {
            std::int64_t hits = 0;
            for (std::int64_t s = 0; s < g.n_sites; ++s)
                for (int a = 0; a < d; ++a)
                    hits += b.blue(s * d + a) &&
                            b.blue(shifted_site(g, s, a, ev.k) * d + a);
            return static_cast<double>(hits) / static_cast<double>(g.n_sites * d);
        }
    }
    throw std::logic_error("translation_average: unknown event");
}

inline void check_event_model(const ModelSpec& ms, const LocalEvent& ev) {
    if (ms.model == ModelTag::Mixed && ev.kind != LocalEventKind::EdgeBlue)
        throw std::invalid_argument("estimate_local_event: only edge_blue is defined for the mixed model");
    if (ev.kind == LocalEventKind::PairCollinearDistance &&
        ms.model != ModelTag::Independent)
        throw std::invalid_argument("estimate_local_event: distance correlation needs the independent model");
    if (ev.kind == LocalEventKind::PairCollinearDistance && ev.k < 1)
        throw std::invalid_argument("estimate_local_event: k must be >= 1");
}

} // namespace detail

// For PairCollinearDistance the returned estimate is the empirical
// correlation (P11 - lambda^2)/(lambda(1-lambda)); otherwise the event
// probability.
inline EstimateWithCI estimate_local_event(const ModelSpec& ms, const LocalEvent& ev,
                                           int L, std::int64_t replicates,
                                           std::uint64_t master_seed,
                                           int threads = 0, bool keep_values = false) {
    detail::check_event_model(ms, ev);
    if (!torus_bias_ok(L, ms.p))
        throw std::invalid_argument("estimate_local_event: L too small for p (torus bias bound)");
    const Geometry g = torus(ms.d, L);
    auto values = run_replicates<double>(
        replicates,
        [&](std::int64_t rep) {
            const BlueEdgeSet b = replicate_blue(g, ms, master_seed, rep);
            return detail::translation_average(g, b, ev);
        },
        threads);
    if (ev.kind == LocalEventKind::PairCollinearDistance) {
        const double lam = ms.lambda;
        for (double& v : values) v = (v - lam * lam) / (lam * (1.0 - lam));
    }
    return summarize(values, master_seed, keep_values);
}

// ---------------------------------------------------------------------------
// Wrapping probability (finite-volume percolation proxy)
// ---------------------------------------------------------------------------

inline EstimateWithCI wrapping_probability(const ModelSpec& ms, int L,
                                           std::int64_t replicates,
                                           std::uint64_t master_seed,
                                           int threads = 0, bool keep_values = false) {
    const Geometry g = torus(ms.d, L);
    auto values = run_replicates<double>(
        replicates,
        [&](std::int64_t rep) {
            const BlueEdgeSet b = replicate_blue(g, ms, master_seed, rep);
            return wraps_any(clusters(g, b)) ? 1.0 : 0.0;
        },
        threads);
    return summarize(values, master_seed, keep_values);
}

// ---------------------------------------------------------------------------
// Critical-point search
// ---------------------------------------------------------------------------

enum class VaryParam { P, Lambda };

struct CriticalEstimate {
    VaryParam parameter = VaryParam::P;
    double estimate = 0.0;
    double ci_halfwidth = 0.0;
    std::vector<int> L_list;
    double crossing_target = 0.5;
    std::vector<std::pair<int, double>> per_L_crossing;
    std::uint64_t master_seed = 0;
};

namespace detail {

inline ModelSpec with_param(ModelSpec ms, VaryParam vary, double x) {
    (vary == VaryParam::P ? ms.p : ms.lambda) = x;
    return ms;
}

} // namespace detail

// Coarse scan (monotonicity check + bracketing), then bisection per L on
// wrap probability = target. Reports the largest-L crossing; the spread
// across L_list becomes the ci half-width.
inline CriticalEstimate critical_search(const ModelSpec& ms, VaryParam vary,
                                        double lo, double hi,
                                        const std::vector<int>& L_list,
                                        std::int64_t replicates,
                                        std::uint64_t master_seed,
                                        double target = 0.5, double tol = 2e-3,
                                        int threads = 0) {
    if (!(lo < hi)) throw std::invalid_argument("critical_search: bad bracket");
    if (L_list.empty()) throw std::invalid_argument("critical_search: empty L list");

    CriticalEstimate ce;
    ce.parameter = vary;
    ce.L_list = L_list;
    ce.crossing_target = target;
    ce.master_seed = master_seed;

    for (int L : L_list) {
        std::uint64_t eval = 0;
        auto wrap_at = [&](double x) {
            const std::uint64_t seed =
                mix64(mix64(master_seed + kGolden * static_cast<std::uint64_t>(L)) +
                      kGolden * eval++);
            return wrapping_probability(detail::with_param(ms, vary, x), L,
                                        replicates, seed, threads);
        };

        // coarse scan
        constexpr int kScan = 7;
        std::vector<double> xs(kScan), ws(kScan), ses(kScan);
        for (int i = 0; i < kScan; ++i) {
            xs[i] = lo + (hi - lo) * i / (kScan - 1);
            const EstimateWithCI e = wrap_at(xs[i]);
            ws[i] = e.mean;
            ses[i] = e.stderr_;
        }
        const bool increasing = ws.back() > ws.front();
        for (int i = 0; i + 1 < kScan; ++i) {
            const double step = increasing ? ws[i + 1] - ws[i] : ws[i] - ws[i + 1];
            const double slack =
                4.0 * std::sqrt(ses[i] * ses[i] + ses[i + 1] * ses[i + 1]) + 0.01;
            if (step < -slack)
                throw std::runtime_error(
                    "critical_search: wrap probability not monotone across the scan");
        }
        if ((ws.front() - target) * (ws.back() - target) > 0.0)
            throw std::runtime_error("critical_search: bracket without a target crossing");

        // narrow to the coarse cell containing the crossing
        double a = xs.front(), b = xs.back();
        for (int i = 0; i + 1 < kScan; ++i) {
            if ((ws[i] - target) * (ws[i + 1] - target) <= 0.0) {
                a = xs[i];
                b = xs[i + 1];
                break;
            }
        }

        while (b - a > tol) {
            const double mid = 0.5 * (a + b);
            const double w = wrap_at(mid).mean;
            const bool below = increasing ? (w < target) : (w > target);
            (below ? a : b) = mid;
        }
        ce.per_L_crossing.emplace_back(L, 0.5 * (a + b));
    }

    const auto best = *std::max_element(
        ce.per_L_crossing.begin(), ce.per_L_crossing.end(),
        [](const auto& x, const auto& y) { return x.first < y.first; });
    ce.estimate = best.second;
    double spread = tol;
    for (const auto& [L, x] : ce.per_L_crossing)
        spread = std::max(spread, std::abs(x - ce.estimate));
    ce.ci_halfwidth = spread;
    return ce;
}

// ---------------------------------------------------------------------------
// Frontier sweep
// ---------------------------------------------------------------------------

struct SweepRow {
    ModelTag model;
    int d;
    int L;
    Boundary boundary;
    double p;
    double lambda;
    EstimateWithCI wrap_prob;
    EstimateWithCI largest_fraction;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::uint64_t master_seed = 0;
};

inline SweepResult frontier_sweep(const ModelSpec& base,
                                  const std::vector<double>& p_grid,
                                  const std::vector<double>& lambda_grid, int L,
                                  std::int64_t replicates, std::uint64_t master_seed,
                                  int threads = 0) {
    SweepResult out;
    out.master_seed = master_seed;
    const Geometry g = torus(base.d, L);
    std::uint64_t cell = 0;
    for (double p : p_grid) {
        for (double lambda : lambda_grid) {
            ModelSpec ms = base;
            ms.p = p;
            ms.lambda = lambda;
            const std::uint64_t seed = mix64(master_seed + kGolden * ++cell);
            struct Obs { double wrap; double frac; };
            auto obs = run_replicates<Obs>(
                replicates,
                [&](std::int64_t rep) -> Obs {
                    const BlueEdgeSet b = replicate_blue(g, ms, seed, rep);
                    const ClusterReport cr = clusters(g, b);
                    return {wraps_any(cr) ? 1.0 : 0.0, cr.largest_fraction};
                },
                threads);
            std::vector<double> wraps(obs.size()), fracs(obs.size());
            for (std::size_t i = 0; i < obs.size(); ++i) {
                wraps[i] = obs[i].wrap;
                fracs[i] = obs[i].frac;
            }
            out.rows.push_back({ms.model, ms.d, L, Boundary::Torus, p, lambda,
                                summarize(wraps, seed), summarize(fracs, seed)});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mixed-model critical curve
// ---------------------------------------------------------------------------

struct MixedCurvePoint {
    double p;
    double lambda_c;     // 1.0 when pinned
    bool pinned;         // p at or below the site threshold: no search
    double ci_halfwidth; // bisection bracket width (0 when pinned)
};

struct MixedCurveResult {
    std::vector<MixedCurvePoint> points;
    int L;
    std::int64_t replicates;
    std::uint64_t master_seed;
    double site_threshold;
};

inline MixedCurveResult mixed_curve_estimate(int d, const std::vector<double>& p_grid,
                                             int L, std::int64_t replicates,
                                             std::uint64_t master_seed,
                                             double site_threshold = 0.592746,
                                             double tol = 2e-3, int threads = 0) {
    MixedCurveResult out{{}, L, replicates, master_seed, site_threshold};
    std::uint64_t cell = 0;
    for (double p : p_grid) {
        ++cell;
        if (p <= site_threshold) {
            out.points.push_back({p, 1.0, true, 0.0});
            continue;
        }
        ModelSpec ms{ModelTag::Mixed, d, p, 0.0};
        std::uint64_t eval = 0;
        auto wrap_at = [&](double lambda) {
            ms.lambda = lambda;
            const std::uint64_t seed =
                mix64(mix64(master_seed + kGolden * cell) + kGolden * eval++);
            return wrapping_probability(ms, L, replicates, seed, threads).mean;
        };
        double a = 0.0, b = 1.0;
        while (b - a > tol) {
            const double mid = 0.5 * (a + b);
            (wrap_at(mid) < 0.5 ? a : b) = mid;
        }
        out.points.push_back({p, 0.5 * (a + b), false, 0.5 * (b - a) + tol});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Block-event simulation (independent-model coloring)
// ---------------------------------------------------------------------------

struct BlockEventEstimates {
    EstimateWithCI A;
    std::optional<EstimateWithCI> C; // absent unless r is a multiple of 3
};

namespace detail {

// First success index of iid Bernoulli(p) draws over [0, n), or -1.
inline int first_occupied(RngStream& rng, double p, int n) {
    for (int j = 0; j < n; ++j)
        if (rng.next_bernoulli(p)) return j;
    return -1;
}

} // namespace detail

// Literal simulation of the two block events: a blue feasible pair joining
// the north/south bands of a block face (A), and one joining the facing
// strips of neighbouring blocks (C). Band widths follow the closed forms,
// with the C event using 2r/3 rows.
inline BlockEventEstimates block_event_mc(const BlockParams& bp, std::int64_t replicates,
                                          std::uint64_t master_seed, int threads = 0) {
    bp.validate();
    const int r = bp.r;
    const double p = 1.0 - bp.q;
    const bool with_c = (r % 3 == 0);
    const int w = with_c ? 2 * r / 3 : 0;

    struct Obs { double a; double c; };
    auto obs = run_replicates<Obs>(
        replicates,
        [&](std::int64_t rep) -> Obs {
            RngStream rng(derive_seed(master_seed, rep, 3), 0, StreamRole::Scratch);
            double hitA = 0.0, hitC = 0.0;
            for (int k = 0; k < r; ++k) {
                // north scan includes the anchor site, south excludes it
                const int north = detail::first_occupied(rng, p, 3 * r);
                const int south = detail::first_occupied(rng, p, 3 * r - 1);
                if (north >= 2 * r && south >= 0 && south + 1 >= 2 * r &&
                    rng.next_bernoulli(bp.lambda))
                    hitA = 1.0;
            }
            if (with_c) {
                for (int row = 0; row < w; ++row) {
                    const int east = detail::first_occupied(rng, p, 2 * r + w);
                    const int west = detail::first_occupied(rng, p, 2 * r - 1 + w);
                    if (east >= 2 * r && west >= 2 * r - 1 &&
                        rng.next_bernoulli(bp.lambda))
                        hitC = 1.0;
                }
            }
            return {hitA, hitC};
        },
        threads);

    std::vector<double> va(obs.size()), vc(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i) {
        va[i] = obs[i].a;
        vc[i] = obs[i].c;
    }
    BlockEventEstimates out;
    out.A = summarize(va, master_seed);
    if (with_c) out.C = summarize(vc, master_seed);
    return out;
}

// ---------------------------------------------------------------------------
// Truncated-sum / exhaustive-enumeration oracle
// ---------------------------------------------------------------------------

struct OracleResult {
    double value;
    double tail_bound;
};

namespace detail {

// Fraction of choice tuples for which a predicate holds, enumerating each
// listed site's 2d direction choices exhaustively.
template <typename Pred>
double choice_fraction(int d, int n_sites, Pred&& pred) {
    const int m = 2 * d;
    std::int64_t total = 1;
    for (int i = 0; i < n_sites; ++i) total *= m;
    std::int64_t hits = 0;
    std::vector<int> code(n_sites, 0);
    for (std::int64_t it = 0; it < total; ++it) {
        std::int64_t rem = it;
        for (int i = 0; i < n_sites; ++i) {
            code[i] = static_cast<int>(rem % m);
            rem /= m;
        }
        hits += pred(code) ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

} // namespace detail

// Independent oracle for the local-event probabilities: gap configurations
// are summed up to cutoff K per ray, and one-choice colorings are
// enumerated exhaustively over the anchors' direction choices.
inline OracleResult truncated_sum_oracle(const ModelSpec& ms, const LocalEvent& ev,
                                         int K) {
    if (K < 1) throw std::invalid_argument("truncated_sum_oracle: K must be >= 1");
    detail::check_event_model(ms, ev);
    const int d = ms.d;
    const double p = ms.p, q = 1.0 - ms.p, lam = ms.lambda;
    const double ray_mass = 1.0 - std::pow(q, K); // first occupied within K steps
    const auto dir_plus = [&](int axis) { return Direction{axis, +1}.encode(); };
    const auto dir_minus = [&](int axis) { return Direction{axis, -1}.encode(); };

    if (ms.model == ModelTag::OneChoice) {
        switch (ev.kind) {
            case LocalEventKind::EdgeBlue: {
                // anchors: nearest occupied site at or west of o, and east of o
                const double f = detail::choice_fraction(d, 2, [&](const std::vector<int>& c) {
                    return c[0] == dir_plus(0) || c[1] == dir_minus(0);
                });
                return {f * ray_mass * ray_mass, 2.0 * std::pow(q, K)};
            }
            case LocalEventKind::PairCollinear: {
                const double f_occ = detail::choice_fraction(d, 3, [&](const std::vector<int>& c) {
                    // c = (west anchor, o, east anchor)
                    const bool east_blue = c[1] == dir_plus(0) || c[2] == dir_minus(0);
                    const bool west_blue = c[1] == dir_minus(0) || c[0] == dir_plus(0);
                    return east_blue && west_blue;
                });
                const double f_unocc = detail::choice_fraction(d, 2, [&](const std::vector<int>& c) {
                    return c[0] == dir_plus(0) || c[1] == dir_minus(0);
                });
                return {(p * f_occ + q * f_unocc) * ray_mass * ray_mass,
                        2.0 * std::pow(q, K)};
            }
            case LocalEventKind::PairPerp: {
                const double f_occ = detail::choice_fraction(d, 3, [&](const std::vector<int>& c) {
                    // c = (o, east anchor, north anchor)
                    const bool e1_blue = c[0] == dir_plus(0) || c[1] == dir_minus(0);
                    const bool e2_blue = c[0] == dir_plus(1) || c[2] == dir_minus(1);
                    return e1_blue && e2_blue;
                });
                const double f_seg = detail::choice_fraction(d, 2, [&](const std::vector<int>& c) {
                    return c[0] == dir_plus(0) || c[1] == dir_minus(0);
                });
                return {p * f_occ * ray_mass * ray_mass +
                            q * f_seg * f_seg * std::pow(ray_mass, 4),
                        4.0 * std::pow(q, K)};
            }
            case LocalEventKind::VertexBlue: {
                // occupied vertices are blue outright; an unoccupied vertex
                // needs some covering segment blue
                const double f_seg = detail::choice_fraction(d, 2, [&](const std::vector<int>& c) {
                    return c[0] == dir_plus(0) || c[1] == dir_minus(0);
                });
                const double per_axis = f_seg * ray_mass * ray_mass;
                return {p + q * (1.0 - std::pow(1.0 - per_axis, d)),
                        2.0 * d * std::pow(q, K)};
            }
            case LocalEventKind::PairCollinearDistance:
                throw std::invalid_argument("truncated_sum_oracle: unsupported event");
        }
    }

    if (ms.model == ModelTag::Independent) {
        switch (ev.kind) {
            case LocalEventKind::EdgeBlue:
                return {lam, 0.0}; // the covering segment is a single coin
            case LocalEventKind::VertexBlue: {
                const double a = std::pow(1.0 - lam, d);
                return {p * (1.0 - a * a) + q * (1.0 - a), 0.0};
            }
            case LocalEventKind::PairCollinear:
                // occupied origin splits the line into two segments
                return {p * lam * lam + q * lam, 0.0};
            case LocalEventKind::PairPerp:
                return {lam * lam, 0.0};
            case LocalEventKind::PairCollinearDistance: {
                // same covering segment iff the k sites between are unoccupied;
                // returns the joint probability P11
                const double same = std::pow(q, ev.k);
                return {same * lam + (1.0 - same) * lam * lam, 0.0};
            }
        }
    }

    if (ms.model == ModelTag::Mixed && ev.kind == LocalEventKind::EdgeBlue)
        return {lam * p * p, 0.0};

    throw std::invalid_argument("truncated_sum_oracle: unsupported model/event");
}

} // namespace seglat
