// Command-line surface for the segment-percolation engine: sampling,
// rendering, estimation, sweeps, critical-point search and verification.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seglat/csv.hpp"
#include "seglat/serialize.hpp"
#include "seglat/svg.hpp"
#include "seglat/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

seglat::ModelTag parse_model(const std::string& s) {
    if (s == "one-choice") return seglat::ModelTag::OneChoice;
    if (s == "independent") return seglat::ModelTag::Independent;
    if (s == "mixed") return seglat::ModelTag::Mixed;
    throw UsageError("unknown model: " + s);
}

std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw UsageError("empty grid: " + s);
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (double v : parse_grid(s)) out.push_back(static_cast<int>(v));
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << content;
    if (!os) throw IoError("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void emit_csv(const std::vector<seglat::CsvRow>& rows, const std::string& out_path) {
    if (out_path.empty()) {
        seglat::write_csv(std::cout, rows);
    } else {
        std::ostringstream ss;
        seglat::write_csv(ss, rows);
        write_file(out_path, ss.str());
    }
}

seglat::LocalEvent parse_event(const std::string& s, int k) {
    using seglat::LocalEventKind;
    if (s == "edge-blue") return {LocalEventKind::EdgeBlue, k};
    if (s == "vertex-blue") return {LocalEventKind::VertexBlue, k};
    if (s == "pair-collinear") return {LocalEventKind::PairCollinear, k};
    if (s == "pair-perp") return {LocalEventKind::PairPerp, k};
    if (s == "pair-collinear-distance") return {LocalEventKind::PairCollinearDistance, k};
    throw UsageError("unknown event: " + s);
}

int run(int argc, char** argv) {
    CLI::App app{"seglat: lattice segment-percolation simulation and verification"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Run configuration file (key=value lines)");

    // ---- sample ------------------------------------------------------------
    auto* sample = app.add_subcommand("sample", "Sample a site configuration and color it");
    std::string sample_model = "one-choice", sample_boundary = "torus", sample_out;
    int sample_d = 2, sample_L = 64;
    double sample_p = 0.5, sample_lambda = -1.0;
    std::uint64_t sample_seed = 1;
    sample->add_option("--model", sample_model)->required();
    sample->add_option("--d", sample_d);
    sample->add_option("--L", sample_L);
    sample->add_option("--boundary", sample_boundary)
        ->check(CLI::IsMember({"torus", "free"}));
    sample->add_option("--p", sample_p)->required();
    sample->add_option("--lambda", sample_lambda);
    sample->add_option("--seed", sample_seed);
    sample->add_option("--out", sample_out);

    // ---- render ------------------------------------------------------------
    auto* render = app.add_subcommand("render", "Render a sampled artifact as SVG");
    std::string render_in, render_out;
    bool highlight_left = false, omit_plain = false;
    double render_cell = 10.0;
    render->add_option("--in", render_in)->required();
    render->add_option("--out", render_out)->required();
    render->add_flag("--highlight-left", highlight_left);
    render->add_flag("--omit-plain", omit_plain);
    render->add_option("--cell", render_cell);

    // ---- analytic ----------------------------------------------------------
    auto* analytic = app.add_subcommand("analytic", "Evaluate a closed-form quantity");
    std::string formula;
    int an_d = 2, an_r = 1, an_k = 1;
    double an_p = 0.5, an_lambda = 0.5, an_q = 0.5;
    analytic->add_option("--formula", formula)->required();
    analytic->add_option("--d", an_d);
    analytic->add_option("--p", an_p);
    analytic->add_option("--lambda", an_lambda);
    analytic->add_option("--q", an_q);
    analytic->add_option("--r", an_r);
    analytic->add_option("--k", an_k);

    // ---- estimate ----------------------------------------------------------
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo local-event estimate");
    std::string est_model = "one-choice", est_event = "edge-blue", est_out, est_full;
    int est_d = 2, est_L = 128, est_k = 1, est_threads = 0;
    double est_p = 0.5, est_lambda = -1.0;
    std::int64_t est_reps = 48;
    std::uint64_t est_seed = 1;
    estimate->add_option("--model", est_model)->required();
    estimate->add_option("--event", est_event)->required();
    estimate->add_option("--k", est_k);
    estimate->add_option("--d", est_d);
    estimate->add_option("--L", est_L);
    estimate->add_option("--p", est_p)->required();
    estimate->add_option("--lambda", est_lambda);
    estimate->add_option("--replicates", est_reps);
    estimate->add_option("--seed", est_seed);
    estimate->add_option("--threads", est_threads);
    estimate->add_option("--out", est_out);
    estimate->add_option("--full", est_full)
        ->description("Also write JSON with per-replicate values");

    // ---- wrap --------------------------------------------------------------
    auto* wrap = app.add_subcommand("wrap", "Wrapping probability estimate");
    std::string wrap_model = "independent", wrap_out;
    int wrap_d = 2, wrap_L = 64, wrap_threads = 0;
    double wrap_p = 0.5, wrap_lambda = -1.0;
    std::int64_t wrap_reps = 200;
    std::uint64_t wrap_seed = 1;
    wrap->add_option("--model", wrap_model)->required();
    wrap->add_option("--d", wrap_d);
    wrap->add_option("--L", wrap_L);
    wrap->add_option("--p", wrap_p)->required();
    wrap->add_option("--lambda", wrap_lambda);
    wrap->add_option("--replicates", wrap_reps);
    wrap->add_option("--seed", wrap_seed);
    wrap->add_option("--threads", wrap_threads);
    wrap->add_option("--out", wrap_out);

    // ---- critical ----------------------------------------------------------
    auto* critical = app.add_subcommand("critical", "Critical-point crossing search");
    std::string crit_model = "one-choice", crit_vary = "p", crit_L = "64,128", crit_out;
    std::string crit_bracket = "0.4,0.6";
    int crit_d = 2, crit_threads = 0;
    double crit_p = 0.5, crit_lambda = 0.5, crit_target = 0.5, crit_tol = 2e-3;
    std::int64_t crit_reps = 400;
    std::uint64_t crit_seed = 1;
    critical->add_option("--model", crit_model)->required();
    critical->add_option("--d", crit_d);
    critical->add_option("--vary", crit_vary)->check(CLI::IsMember({"p", "lambda"}));
    critical->add_option("--bracket", crit_bracket);
    critical->add_option("--L", crit_L);
    critical->add_option("--p", crit_p);
    critical->add_option("--lambda", crit_lambda);
    critical->add_option("--replicates", crit_reps);
    critical->add_option("--target", crit_target);
    critical->add_option("--tol", crit_tol);
    critical->add_option("--seed", crit_seed);
    critical->add_option("--threads", crit_threads);
    critical->add_option("--out", crit_out);

    // ---- sweep -------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "Wrap-probability sweep over a (p,lambda) grid");
    std::string sweep_model = "independent", sweep_p_grid = "0.5", sweep_l_grid = "0.5",
                sweep_out;
    int sweep_d = 2, sweep_L = 64, sweep_threads = 0;
    std::int64_t sweep_reps = 200;
    std::uint64_t sweep_seed = 1;
    sweep->add_option("--model", sweep_model)->required();
    sweep->add_option("--d", sweep_d);
    sweep->add_option("--L", sweep_L);
    sweep->add_option("--p-grid", sweep_p_grid);
    sweep->add_option("--lambda-grid", sweep_l_grid);
    sweep->add_option("--replicates", sweep_reps);
    sweep->add_option("--seed", sweep_seed);
    sweep->add_option("--threads", sweep_threads);
    sweep->add_option("--out", sweep_out);

    // ---- mixedcurve --------------------------------------------------------
    auto* mixedcurve = app.add_subcommand("mixedcurve", "Mixed-model critical curve estimate");
    std::string mc_p_grid = "0.65,0.75,0.85,1.0", mc_out;
    int mc_d = 2, mc_L = 128, mc_threads = 0;
    std::int64_t mc_reps = 200;
    std::uint64_t mc_seed = 1;
    mixedcurve->add_option("--d", mc_d);
    mixedcurve->add_option("--L", mc_L);
    mixedcurve->add_option("--p-grid", mc_p_grid);
    mixedcurve->add_option("--replicates", mc_reps);
    mixedcurve->add_option("--seed", mc_seed);
    mixedcurve->add_option("--threads", mc_threads);
    mixedcurve->add_option("--out", mc_out);

    // ---- blockcheck --------------------------------------------------------
    auto* blockcheck = app.add_subcommand("blockcheck", "Block-event formula vs MC");
    int bc_r = 1, bc_threads = 0;
    double bc_q = 0.5, bc_lambda = 0.4375;
    std::int64_t bc_reps = 100000;
    std::uint64_t bc_seed = 1;
    blockcheck->add_option("--r", bc_r)->required();
    blockcheck->add_option("--q", bc_q)->required();
    blockcheck->add_option("--lambda", bc_lambda)->required();
    blockcheck->add_option("--replicates", bc_reps);
    blockcheck->add_option("--seed", bc_seed);
    blockcheck->add_option("--threads", bc_threads);

    // ---- verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "Run the analytic-vs-MC and coupling checks");
    seglat::VerifyOptions vopt;
    verify->add_option("--only", vopt.only);
    verify->add_option("--seed", vopt.master_seed);
    verify->add_option("--threads", vopt.threads);
    std::string fault;
    verify->add_option("--inject-fault", fault)
        ->description("Corrupt the named check family (self-test)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*sample) {
        const seglat::ModelTag model = parse_model(sample_model);
        if (model != seglat::ModelTag::OneChoice && sample_lambda < 0.0)
            throw UsageError("--lambda is required for this model");
        const auto g = seglat::make_geometry(
            sample_d, std::vector<int>(sample_d, sample_L),
            sample_boundary == "torus" ? seglat::Boundary::Torus : seglat::Boundary::Free);
        const auto cfg = seglat::sample_sites(g, sample_p, sample_seed);
        seglat::BlueEdgeSet blue = [&] {
            switch (model) {
                case seglat::ModelTag::OneChoice:
                    return seglat::one_choice_blue(cfg, seglat::feasible_segments(cfg),
                                                   seglat::mix64(sample_seed)).second;
                case seglat::ModelTag::Independent:
                    return seglat::independent_blue(cfg, seglat::feasible_segments(cfg),
                                                    sample_lambda, seglat::mix64(sample_seed));
                default:
                    return seglat::mixed_percolation(cfg, sample_lambda,
                                                     seglat::mix64(sample_seed));
            }
        }();
        nlohmann::json j;
        j["sites"] = seglat::to_json(cfg);
        j["blue"] = seglat::to_json(blue);
        if (sample_out.empty()) std::cout << j.dump(2) << "\n";
        else write_file(sample_out, j.dump(2) + "\n");
        return kExitOk;
    }

    if (*render) {
        const auto j = nlohmann::json::parse(read_file(render_in));
        const auto cfg = seglat::site_config_from_json(j.at("sites"));
        const auto blue = seglat::blue_edge_set_from_json(j.at("blue"));
        if (cfg.geometry.boundary != seglat::Boundary::Free)
            throw UsageError("render: free-boundary artifact required");
        seglat::RenderOptions opt;
        opt.cell = render_cell;
        opt.highlight_left = highlight_left;
        opt.omit_plain = omit_plain;
        write_file(render_out, seglat::render_svg(cfg, blue, opt));
        return kExitOk;
    }

    if (*analytic) {
        if (formula == "lambda-one-choice") {
            // exact rational (4d-1)/(4d^2)
            std::cout << 4 * an_d - 1 << "/" << 4 * an_d * an_d << " = "
                      << seglat::format_double(seglat::lambda_one_choice(an_d)) << "\n";
        } else if (formula == "vertex-blue-one-choice") {
            std::cout << seglat::format_double(
                             seglat::vertex_blue_prob_one_choice(an_d, an_p)) << "\n";
        } else if (formula == "collinear-pair-one-choice") {
            std::cout << seglat::format_double(
                             seglat::collinear_pair_prob_one_choice(an_d, an_p)) << "\n";
        } else if (formula == "perp-pair-one-choice") {
            std::cout << seglat::format_double(
                             seglat::perp_pair_prob_one_choice(an_d, an_p)) << "\n";
        } else if (formula == "vertex-blue-independent") {
            std::cout << seglat::format_double(
                             seglat::vertex_blue_prob_independent(an_d, an_p, an_lambda))
                      << "\n";
        } else if (formula == "collinear-corr-independent") {
            std::cout << seglat::format_double(
                             seglat::collinear_corr_independent(an_p, an_k)) << "\n";
        } else if (formula == "branching-means") {
            const auto bm = seglat::branching_means(an_d, an_p, an_lambda);
            std::cout << seglat::format_double(bm.mu1) << " "
                      << seglat::format_double(bm.mu2) << " "
                      << (bm.subcritical ? "subcritical" : "not-subcritical") << "\n";
        } else if (formula == "compass-spectral-radius") {
            std::cout << seglat::format_double(seglat::compass_spectral_radius(an_d, an_p))
                      << "\n";
        } else if (formula == "compass-threshold") {
            std::cout << seglat::format_double(seglat::compass_threshold(an_d)) << "\n";
        } else if (formula == "block-r") {
            std::cout << seglat::block_r(an_p) << "\n";
        } else if (formula == "block-event-a") {
            std::cout << seglat::format_double(
                             seglat::block_event_A_prob({an_r, an_q, an_lambda})) << "\n";
        } else if (formula == "block-event-c") {
            std::cout << seglat::format_double(
                             seglat::block_event_C_prob({an_r, an_q, an_lambda})) << "\n";
        } else if (formula == "good-block-bound") {
            std::cout << seglat::format_double(
                             seglat::good_block_lower_bound({an_r, an_q, an_lambda})) << "\n";
        } else if (formula == "classify-region") {
            std::cout << seglat::to_string(seglat::classify_region(an_d, an_p, an_lambda))
                      << "\n";
        } else {
            throw UsageError("unknown formula: " + formula);
        }
        return kExitOk;
    }

    if (*estimate) {
        const seglat::ModelTag model = parse_model(est_model);
        if (model != seglat::ModelTag::OneChoice && est_lambda < 0.0)
            throw UsageError("--lambda is required for this model");
        const seglat::ModelSpec ms{model, est_d, est_p, std::max(est_lambda, 0.0)};
        const auto ev = parse_event(est_event, est_k);
        const auto e = seglat::estimate_local_event(ms, ev, est_L, est_reps, est_seed,
                                                    est_threads, !est_full.empty());
        seglat::CsvRow row{est_model, est_d, est_L, "torus", est_p,
                           std::max(est_lambda, 0.0), e.replicates, est_event,
                           e.mean, e.stderr_, est_seed};
        emit_csv({row}, est_out);
        if (!est_full.empty()) {
            nlohmann::json j;
            j["mean"] = e.mean;
            j["stderr"] = e.stderr_;
            j["replicates"] = e.replicates;
            j["master_seed"] = e.master_seed;
            j["per_replicate_values"] = e.per_replicate_values;
            write_file(est_full, j.dump(2) + "\n");
        }
        return kExitOk;
    }

    if (*wrap) {
        const seglat::ModelTag model = parse_model(wrap_model);
        if (model != seglat::ModelTag::OneChoice && wrap_lambda < 0.0)
            throw UsageError("--lambda is required for this model");
        const seglat::ModelSpec ms{model, wrap_d, wrap_p, std::max(wrap_lambda, 0.0)};
        const auto e = seglat::wrapping_probability(ms, wrap_L, wrap_reps, wrap_seed,
                                                    wrap_threads);
        seglat::CsvRow row{wrap_model, wrap_d, wrap_L, "torus", wrap_p,
                           std::max(wrap_lambda, 0.0), e.replicates, "wrap_prob",
                           e.mean, e.stderr_, wrap_seed};
        emit_csv({row}, wrap_out);
        return kExitOk;
    }

    if (*critical) {
        const seglat::ModelTag model = parse_model(crit_model);
        const seglat::ModelSpec ms{model, crit_d, crit_p, crit_lambda};
        const auto bracket = parse_grid(crit_bracket);
        if (bracket.size() != 2) throw UsageError("--bracket needs lo,hi");
        const auto Ls = parse_int_list(crit_L);
        const auto ce = seglat::critical_search(
            ms, crit_vary == "p" ? seglat::VaryParam::P : seglat::VaryParam::Lambda,
            bracket[0], bracket[1], Ls, crit_reps, crit_seed, crit_target, crit_tol,
            crit_threads);
        std::vector<seglat::CsvRow> rows;
        for (const auto& [L, x] : ce.per_L_crossing) {
            rows.push_back({crit_model, crit_d, L, "torus",
                            crit_vary == "p" ? x : crit_p,
                            crit_vary == "lambda" ? x : crit_lambda, crit_reps,
                            "crossing_" + crit_vary, x, ce.ci_halfwidth, crit_seed});
        }
        emit_csv(rows, crit_out);
        std::cout << "estimate " << seglat::format_double(ce.estimate) << " +/- "
                  << seglat::format_double(ce.ci_halfwidth) << "\n";
        return kExitOk;
    }

    if (*sweep) {
        const seglat::ModelTag model = parse_model(sweep_model);
        const seglat::ModelSpec base{model, sweep_d, 0.5, 0.5};
        const auto res = seglat::frontier_sweep(base, parse_grid(sweep_p_grid),
                                                parse_grid(sweep_l_grid), sweep_L,
                                                sweep_reps, sweep_seed, sweep_threads);
        emit_csv(seglat::sweep_to_csv(res), sweep_out);
        return kExitOk;
    }

    if (*mixedcurve) {
        const auto res = seglat::mixed_curve_estimate(mc_d, parse_grid(mc_p_grid), mc_L,
                                                      mc_reps, mc_seed, 0.592746, 2e-3,
                                                      mc_threads);
        emit_csv(seglat::mixed_curve_to_csv(res), mc_out);
        return kExitOk;
    }

    if (*blockcheck) {
        const seglat::BlockParams bp{bc_r, bc_q, bc_lambda};
        const auto est = seglat::block_event_mc(bp, bc_reps, bc_seed, bc_threads);
        std::cout << "event,formula,mc_mean,mc_stderr\n";
        std::cout << "A," << seglat::format_double(seglat::block_event_A_prob(bp)) << ","
                  << seglat::format_double(est.A.mean) << ","
                  << seglat::format_double(est.A.stderr_) << "\n";
        if (est.C) {
            std::cout << "C," << seglat::format_double(seglat::block_event_C_prob(bp))
                      << "," << seglat::format_double(est.C->mean) << ","
                      << seglat::format_double(est.C->stderr_) << "\n";
        }
        return kExitOk;
    }

    if (*verify) {
        if (!fault.empty()) {
            if (fault != "coupling") throw UsageError("--inject-fault supports: coupling");
            vopt.inject_fault = true;
        }
        const auto results = seglat::run_verification(vopt);
        bool all_pass = true;
        for (const auto& r : results) {
            std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << "  (" << r.detail
                      << ")\n";
            all_pass = all_pass && r.pass;
        }
        if (results.empty()) throw UsageError("verify: no check matches --only filter");
        return all_pass ? kExitOk : kExitVerifyFailed;
    }

    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
