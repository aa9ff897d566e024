#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace seglat {

// ---------------------------------------------------------------------------
// Local probabilities of the one-choice model
// ---------------------------------------------------------------------------

// Probability that a given unit edge is blue; independent of p.
inline double lambda_one_choice(int d) {
    if (d < 1) throw std::invalid_argument("lambda_one_choice: d must be >= 1");
    const double t = 1.0 - 1.0 / (2.0 * d);
    return 1.0 - t * t;
}

// Probability that a given vertex is incident to some blue edge.
inline double vertex_blue_prob_one_choice(int d, double p) {
    if (d < 2) throw std::invalid_argument("vertex_blue_prob_one_choice: d must be >= 2");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("vertex_blue_prob_one_choice: p must lie in (0,1]");
    const double lam = lambda_one_choice(d);
    return p + (1.0 - p) * (1.0 - std::pow(1.0 - lam, d));
}

// Probability that the two collinear edges at a vertex are both blue.
inline double collinear_pair_prob_one_choice(int d, double p) {
    if (d < 2) throw std::invalid_argument("collinear_pair_prob_one_choice: d must be >= 2");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("collinear_pair_prob_one_choice: p must lie in [0,1]");
    const double lam = lambda_one_choice(d);
    return 1.0 - (1.0 + p / d) * (1.0 - lam);
}

// Probability that two perpendicular edges at a vertex are both blue.
inline double perp_pair_prob_one_choice(int d, double p) {
    if (d < 2) throw std::invalid_argument("perp_pair_prob_one_choice: d must be >= 2");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("perp_pair_prob_one_choice: p must lie in [0,1]");
    const double lam = lambda_one_choice(d);
    const double td = 2.0 * d;
    return lam * lam - p * (td - 1.0) * (td - 1.0) / (td * td * td * td);
}

// ---------------------------------------------------------------------------
// Local probabilities of the independent model
// ---------------------------------------------------------------------------

inline double vertex_blue_prob_independent(int d, double p, double lambda) {
    if (d < 2) throw std::invalid_argument("vertex_blue_prob_independent: d must be >= 2");
    if (!(p >= 0.0 && p <= 1.0) || !(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("vertex_blue_prob_independent: bad parameters");
    const double a = std::pow(1.0 - lambda, d);
    return 1.0 - a + p * (a - a * a);
}

// Correlation of the blue indicators of two collinear edges with k
// lattice sites between them.
inline double collinear_corr_independent(double p, int k) {
    if (k < 1) throw std::invalid_argument("collinear_corr_independent: k must be >= 1");
    return std::pow(1.0 - p, k);
}

// Joint blue probability of two collinear edges at distance k, from the
// correlation above: P11 = lambda^2 + lambda(1-lambda)(1-p)^k.
inline double collinear_pair_prob_independent(double p, double lambda, int k = 1) {
    return lambda * lambda +
           lambda * (1.0 - lambda) * collinear_corr_independent(p, k);
}

// Perpendicular edges always lie in distinct segments.
inline double perp_pair_prob_independent(double lambda) { return lambda * lambda; }

// ---------------------------------------------------------------------------
// Branching bound for the independent model
// ---------------------------------------------------------------------------

struct BranchingMeans {
    double mu1; // mean family-size from an occupied site
    double mu2; // mean family-size from an unoccupied site
    bool subcritical;
};

inline BranchingMeans branching_means(int d, double p, double lambda) {
    if (!(p > 0.0 && p <= 1.0) || !(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("branching_means: bad parameters");
    const double mu1 = (2.0 * d - 1.0) * lambda / p;
    const double mu2 = 2.0 * (d - 1.0) * lambda / p;
    return {mu1, mu2, std::max(mu1, mu2) < 1.0};
}

// ---------------------------------------------------------------------------
// Corrupted compass criterion
// ---------------------------------------------------------------------------

using Matrix3 = std::array<std::array<double, 3>, 3>;

// Mean-offspring matrix of the corrupted compass model with corruption
// probability 1-p. The turquoise set contains no infinite cluster when
// all eigenvalues have modulus < 1.
inline Matrix3 compass_matrix(int d, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("compass_matrix: p must lie in [0,1]");
    const double c = 2.0 * d - 1.0;
    const double q = 1.0 - p;
    const double inv2d = 1.0 / (2.0 * d);
    return {{{c * q, c * q, c * q * inv2d},
             {c, c * inv2d, 0.0},
             {0.0, c, c * inv2d}}};
}

inline double compass_spectral_radius(int d, double p) {
    const Matrix3 m = compass_matrix(d, p);
    // at p = 1 the matrix is lower triangular; read the radius off the
    // diagonal rather than chasing the defective eigenvalue numerically
    if (p == 1.0) return std::max({m[0][0], m[1][1], m[2][2]});
    Eigen::Matrix3d em;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) em(i, j) = m[i][j];
    Eigen::EigenSolver<Eigen::Matrix3d> es(em, false);
    double rho = 0.0;
    for (int i = 0; i < 3; ++i) rho = std::max(rho, std::abs(es.eigenvalues()[i]));
    return rho;
}

// Smallest p* with spectral radius 1: blue (via turquoise) percolation is
// excluded for p above the returned value.
inline double compass_threshold(int d, double tol = 1e-8) {
    if (d < 2) throw std::invalid_argument("compass_threshold: d must be >= 2");
    double lo = 0.0, hi = 1.0;
    if (!(compass_spectral_radius(d, lo) > 1.0 && compass_spectral_radius(d, hi) < 1.0))
        throw std::runtime_error("compass_threshold: no sign change on [0,1]");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (compass_spectral_radius(d, mid) > 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Block events
// ---------------------------------------------------------------------------

struct BlockParams {
    int r;         // block scale, >= 1
    double q;      // 1 - p, in (0,1)
    double lambda; // segment-blue probability

    void validate() const {
        if (r < 1) throw std::invalid_argument("BlockParams: r must be >= 1");
        if (!(q > 0.0 && q < 1.0))
            throw std::invalid_argument("BlockParams: q must lie in (0,1)");
        if (!(lambda >= 0.0 && lambda <= 1.0))
            throw std::invalid_argument("BlockParams: lambda must lie in [0,1]");
    }
};

// r(p) with q^r = 1/2, rounded to the nearest positive integer.
inline int block_r(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("block_r: p must lie in (0,1)");
    const double q = 1.0 - p;
    return std::max(1, static_cast<int>(std::lround(1.0 / std::log2(1.0 / q))));
}

// P(A): a blue feasible pair joins the bands above and below a block face.
// Factored as (lambda/q)[q^{2r}(1-q^r)]^2 to avoid cancellation at small q.
inline double block_event_A_prob(const BlockParams& bp) {
    bp.validate();
    const double g = std::pow(bp.q, 2 * bp.r) * (1.0 - std::pow(bp.q, bp.r));
    const double base = 1.0 - (bp.lambda / bp.q) * g * g;
    if (!(base >= 0.0 && base <= 1.0))
        throw std::invalid_argument("block_event_A_prob: base outside [0,1]");
    return 1.0 - std::pow(base, bp.r);
}

// P(C): a blue feasible pair joins facing strips of neighbouring blocks.
// Requires r to be a multiple of 3.
inline double block_event_C_prob(const BlockParams& bp) {
    bp.validate();
    if (bp.r % 3 != 0)
        throw std::invalid_argument("block_event_C_prob: r must be a multiple of 3");
    const double w = 2.0 * bp.r / 3.0;
    const double g = std::pow(bp.q, 2 * bp.r) * (1.0 - std::pow(bp.q, w));
    const double base = 1.0 - (bp.lambda / bp.q) * g * g;
    if (!(base >= 0.0 && base <= 1.0))
        throw std::invalid_argument("block_event_C_prob: base outside [0,1]");
    return 1.0 - std::pow(base, w);
}

// Union bound P(good) >= 1 - 4(1-P(A)) - 4(1-P(C)), clamped to [0,1].
inline double good_block_lower_bound(const BlockParams& bp) {
    const double a = block_event_A_prob(bp);
    const double c = block_event_C_prob(bp);
    const double b = 1.0 - 4.0 * (1.0 - a) - 4.0 * (1.0 - c);
    return std::clamp(b, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Phase-region classification for the independent model
// ---------------------------------------------------------------------------

enum class PhaseRegion { NoPercolation_A, Percolates_B, Percolates_C_line, Unknown };

inline const char* to_string(PhaseRegion r) {
    switch (r) {
        case PhaseRegion::NoPercolation_A: return "no-percolation-A";
        case PhaseRegion::Percolates_B: return "percolates-B";
        case PhaseRegion::Percolates_C_line: return "percolates-C-line";
        case PhaseRegion::Unknown: return "unknown";
    }
    return "?";
}

// Literature thresholds for Z^2 (bond exact, site numerical) and optional
// empirical inputs. The constant for the log criterion is never asserted
// by this library; it must be supplied by the caller.
struct RegionConfig {
    double bond_threshold = 0.5;
    double site_threshold = 0.592746;
    std::function<double(double)> lambda_bar_c; // empirical critical curve, if known
    std::optional<double> log_constant;         // c in the lambda > c*log(1/q) criterion
};

inline PhaseRegion classify_region(int d, double p, double lambda,
                                   const RegionConfig& cfg = {}) {
    if (d < 2) throw std::invalid_argument("classify_region: d must be >= 2");
    if (!(p > 0.0 && p <= 1.0) || !(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("classify_region: bad parameters");
    if (lambda < p / (2.0 * d - 1.0)) return PhaseRegion::NoPercolation_A;
    if (p == 1.0 && lambda > cfg.bond_threshold) return PhaseRegion::Percolates_C_line;
    if (cfg.lambda_bar_c && p > cfg.site_threshold && lambda > cfg.lambda_bar_c(p))
        return PhaseRegion::Percolates_B;
    if (cfg.log_constant && p < 1.0 &&
        lambda > *cfg.log_constant * std::log(1.0 / (1.0 - p)))
        return PhaseRegion::Percolates_B;
    return PhaseRegion::Unknown;
}

} // namespace seglat
