#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "seglat/montecarlo.hpp"

namespace seglat {

// One row of the results schema:
//   model,d,L,boundary,p,lambda,replicates,metric,mean,stderr,master_seed
struct CsvRow {
    std::string model;
    int d = 0;
    int L = 0;
    std::string boundary = "torus";
    double p = 0.0;
    double lambda = 0.0;
    std::int64_t replicates = 0;
    std::string metric;
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t master_seed = 0;
};

// Shortest round-trip decimal; output is byte-stable across runs.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_csv(std::ostream& os, const std::vector<CsvRow>& rows) {
    os << "model,d,L,boundary,p,lambda,replicates,metric,mean,stderr,master_seed\n";
    for (const auto& r : rows) {
        os << r.model << ',' << r.d << ',' << r.L << ',' << r.boundary << ','
           << format_double(r.p) << ',' << format_double(r.lambda) << ','
           << r.replicates << ',' << r.metric << ',' << format_double(r.mean) << ','
           << format_double(r.stderr_) << ',' << r.master_seed << '\n';
    }
}

inline std::vector<CsvRow> sweep_to_csv(const SweepResult& sweep) {
    std::vector<CsvRow> rows;
    for (const auto& r : sweep.rows) {
        CsvRow base;
        base.model = to_string(r.model);
        base.d = r.d;
        base.L = r.L;
        base.boundary = r.boundary == Boundary::Torus ? "torus" : "free";
        base.p = r.p;
        base.lambda = r.lambda;

        CsvRow wrap = base;
        wrap.replicates = r.wrap_prob.replicates;
        wrap.metric = "wrap_prob";
        wrap.mean = r.wrap_prob.mean;
        wrap.stderr_ = r.wrap_prob.stderr_;
        wrap.master_seed = r.wrap_prob.master_seed;
        rows.push_back(wrap);

        CsvRow frac = base;
        frac.replicates = r.largest_fraction.replicates;
        frac.metric = "largest_fraction";
        frac.mean = r.largest_fraction.mean;
        frac.stderr_ = r.largest_fraction.stderr_;
        frac.master_seed = r.largest_fraction.master_seed;
        rows.push_back(frac);
    }
    return rows;
}

inline std::vector<CsvRow> mixed_curve_to_csv(const MixedCurveResult& mc) {
    std::vector<CsvRow> rows;
    for (const auto& pt : mc.points) {
        CsvRow r;
        r.model = "mixed";
        r.d = 2;
        r.L = mc.L;
        r.p = pt.p;
        r.lambda = pt.lambda_c;
        r.replicates = mc.replicates;
        r.metric = pt.pinned ? "lambda_bar_c_pinned" : "lambda_bar_c";
        r.mean = pt.lambda_c;
        r.stderr_ = pt.ci_halfwidth;
        r.master_seed = mc.master_seed;
        rows.push_back(r);
    }
    return rows;
}

} // namespace seglat
