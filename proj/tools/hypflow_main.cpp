// hypflow: build tree-like metric spaces, run certified proximal steps and
// discrete gradient-flow traces, estimate four-point hyperbolicity, and
// verify the contraction/convergence inequality suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hypflow/harness.hpp"
#include "hypflow/metric_ops.hpp"
#include "hypflow/serialize.hpp"

namespace {

using nlohmann::json;

struct SpaceArgs {
    std::string spec = "tripod";
    std::vector<double> arms{2, 3, 4};
    double path_length = 10;
    int cycle_n = 4;
    double cycle_w = 1;
    int tree_n = 20;
    std::vector<double> weights{0.5, 2.0};
    double delta_build = 0.05;
    int detours = 2;
};

void add_space_options(CLI::App* cmd, SpaceArgs& args) {
    cmd->add_option("--space", args.spec,
                    "tripod|path|cycle|tree|perturbed|halfplane or a space JSON file");
    cmd->add_option("--arms", args.arms, "tripod arm lengths")->expected(3)->delimiter(',');
    cmd->add_option("--path-length", args.path_length, "path space length");
    cmd->add_option("--cycle-n", args.cycle_n, "cycle vertex count");
    cmd->add_option("--cycle-w", args.cycle_w, "cycle edge weight");
    cmd->add_option("--n", args.tree_n, "random tree vertex count");
    cmd->add_option("--weights", args.weights, "random tree weight range lo,hi")
        ->expected(2)
        ->delimiter(',');
    cmd->add_option("--delta-build", args.delta_build, "perturbed tree detour parameter");
    cmd->add_option("--detours", args.detours, "perturbed tree detour count");
}

hypflow::SpacePtr make_space(const SpaceArgs& args, std::uint64_t seed) {
    using namespace hypflow;
    if (args.spec == "tripod") return build_tripod(args.arms[0], args.arms[1], args.arms[2]);
    if (args.spec == "path") return build_path(args.path_length);
    if (args.spec == "cycle") return build_cycle(args.cycle_n, args.cycle_w);
    if (args.spec == "tree")
        return build_random_tree(args.tree_n, args.weights[0], args.weights[1], seed);
    if (args.spec == "perturbed") {
        auto base = build_random_tree(args.tree_n, args.weights[0], args.weights[1], seed);
        return build_perturbed_tree(base, args.delta_build, args.detours, seed ^ 0xDE7).space;
    }
    if (args.spec == "halfplane") return build_half_plane();
    return load_space_file(args.spec);
}

json parse_inline_or_file(const std::string& text) {
    if (!text.empty() && text[0] == '@') {
        std::ifstream in(text.substr(1));
        if (!in) throw hypflow::Error("cannot open file: " + text.substr(1));
        json j;
        in >> j;
        return j;
    }
    return json::parse(text);
}

hypflow::Point parse_point(const hypflow::Space& space, const std::string& text) {
    // bare numbers are a convenience for path-like spaces: offset on edge (0,1)
    char* end = nullptr;
    const double offset = std::strtod(text.c_str(), &end);
    if (end && *end == '\0' && end != text.c_str()) {
        const auto* g = dynamic_cast<const hypflow::GraphSpace*>(&space);
        if (!g) throw hypflow::Error("bare-number points require a graph space");
        return g->point_on_edge(0, 1, offset);
    }
    return hypflow::point_from_json(space, json::parse(text));
}

void write_output(const std::optional<std::string>& out, const std::string& text) {
    if (!out) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(*out);
    if (!f) throw hypflow::Error("cannot write output file: " + *out);
    f << text;
}

int cmd_delta(const SpaceArgs& sargs, std::uint64_t seed, int points, long long samples,
              bool exact, const std::vector<double>& box_args,
              const std::optional<std::string>& out) {
    using namespace hypflow;
    const SpacePtr space = make_space(sargs, seed);
    Rng rng(seed);

    std::vector<Point> pool;
    if (const auto* g = dynamic_cast<const GraphSpace*>(space.get())) {
        for (int v = 0; v < g->vertex_count(); ++v) pool.push_back(g->vertex_point(v));
        for (int i = 0; i < points; ++i) pool.push_back(space->random_point(rng));
    } else {
        const auto& hp = dynamic_cast<const HalfPlaneSpace&>(*space);
        Box box;
        if (!box_args.empty()) box = Box{box_args[0], box_args[1], box_args[2], box_args[3]};
        if (!(box.v_min > 0) || box.v_max < box.v_min || box.u_max < box.u_min)
            throw Error("delta: invalid sampling box");
        const int n = points > 0 ? points : 200;
        for (int i = 0; i < n; ++i) pool.push_back(hp.random_point_in_box(box, rng));
    }

    DeltaEstimate est;
    std::string mode;
    if (exact || (samples <= 0 && pool.size() <= 48)) {
        est = four_point_delta_exact(*space, pool);
        mode = "exact";
    } else {
        const long long count = samples > 0 ? samples : 100000;
        est = four_point_delta_sampled(*space, pool, rng.next_u64(), count);
        mode = "sampled";
    }

    std::printf("delta_hat = %.17g  (mode=%s, quadruples=%lld, pool=%zu)\n", est.delta_hat,
                mode.c_str(), est.sample_count, pool.size());
    std::printf("witness: %s %s %s %s\n", point_to_string(est.witness[0]).c_str(),
                point_to_string(est.witness[1]).c_str(), point_to_string(est.witness[2]).c_str(),
                point_to_string(est.witness[3]).c_str());
    if (out) {
        json j{{"format", 1},
               {"space", space->to_json()},
               {"mode", mode},
               {"seed", seed},
               {"delta_hat", est.delta_hat},
               {"sample_count", est.sample_count},
               {"witness",
                json::array({point_to_json(est.witness[0]), point_to_json(est.witness[1]),
                             point_to_json(est.witness[2]), point_to_json(est.witness[3])})}};
        write_output(out, j.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"proximal point iteration and hyperbolicity checks on metric spaces"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 7;
    std::optional<std::string> out;
    double tol = 1e-8;
    app.add_option("--seed", seed, "seed for every random draw (no wall-clock defaults)");
    app.add_option("--out", out, "output file");
    app.add_option("--tol", tol, "prox certificate tolerance scale");

    auto* delta = app.add_subcommand("delta", "four-point hyperbolicity estimate");
    SpaceArgs delta_space;
    add_space_options(delta, delta_space);
    int delta_points = 0;
    long long delta_samples = 0;
    bool delta_exact = false;
    std::vector<double> delta_box;
    delta->add_option("--points", delta_points, "extra random points in the pool");
    delta->add_option("--samples", delta_samples, "sampled mode: number of quadruples");
    delta->add_flag("--exact", delta_exact, "exhaustive mode over the point pool");
    delta->add_option("--box", delta_box, "half-plane sampling box: umin,umax,vmin,vmax")
        ->expected(4)
        ->delimiter(',');

    auto* proxc = app.add_subcommand("prox", "one certified proximal step");
    SpaceArgs prox_space;
    add_space_options(proxc, prox_space);
    std::string prox_objective = R"({"type":"distance","p":{"vertex":0},"a":1.0})";
    std::string prox_x;
    double prox_tau = 1.0;
    proxc->add_option("--objective", prox_objective, "objective descriptor (JSON or @file)");
    proxc->add_option("--x", prox_x, "starting point (JSON, or bare offset on edge [0,1])")
        ->required();
    proxc->add_option("--tau", prox_tau, "step size");

    auto* flowc = app.add_subcommand("flow", "iterate the proximal operator; CSV trace");
    SpaceArgs flow_space;
    add_space_options(flowc, flow_space);
    std::string flow_objective = R"({"type":"distance","p":{"vertex":0},"a":1.0})";
    std::string flow_x0;
    double flow_tau = 1.0, flow_eps = 0.1;
    int flow_max_iter = 100;
    flowc->add_option("--objective", flow_objective, "objective descriptor (JSON or @file)");
    flowc->add_option("--x0", flow_x0, "initial point")->required();
    flowc->add_option("--tau", flow_tau, "step size");
    flowc->add_option("--epsilon", flow_eps, "stopping scale");
    flowc->add_option("--max-iter", flow_max_iter, "iteration budget");

    auto* verifyc = app.add_subcommand("verify", "randomized theorem suites");
    hypflow::VerifyOptions vopt;
    std::optional<std::string> verify_csv;
    verifyc->add_option("--suite", vopt.suite,
                        "conv|conv_d|step|iteration|contraction|lemmas|all");
    verifyc->add_option("--space", vopt.space, "tree|perturbed|tripod|path|halfplane|<file>");
    verifyc->add_option("--trials", vopt.trials, "number of seeded trials");
    verifyc->add_option("--delta-build", vopt.delta_build, "perturbed tree detour parameter");
    verifyc->add_option("--tau-min", vopt.tau_min, "step size range lower end");
    verifyc->add_option("--tau-max", vopt.tau_max, "step size range upper end");
    verifyc->add_option("--csv", verify_csv, "write the per-report CSV summary here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    using namespace hypflow;
    try {
        if (delta->parsed())
            return cmd_delta(delta_space, seed, delta_points, delta_samples, delta_exact,
                             delta_box, out);

        if (proxc->parsed()) {
            const SpacePtr space = make_space(prox_space, seed);
            const Objective f = objective_from_json(space, parse_inline_or_file(prox_objective));
            const Point x = parse_point(*space, prox_x);
            ProxConfig config;
            config.refine_tol_scale = tol;
            const ProxResult r = prox(*space, f, x, prox_tau, config);
            json j{{"format", 1},
                   {"y", point_to_json(r.y)},
                   {"moreau_value", r.moreau_value},
                   {"displacement", r.displacement},
                   {"certificate", r.certificate},
                   {"f_y", r.f_y},
                   {"tau", r.tau}};
            write_output(out, j.dump(2) + "\n");
            return 0;
        }

        if (flowc->parsed()) {
            const SpacePtr space = make_space(flow_space, seed);
            const Objective f = objective_from_json(space, parse_inline_or_file(flow_objective));
            const Point x0 = parse_point(*space, flow_x0);
            ProxConfig config;
            config.refine_tol_scale = tol;
            const FlowTrace trace =
                flow(*space, f, x0, flow_tau, flow_eps, flow_max_iter, config);
            std::fprintf(stderr, "stop_reason=%s iterates=%zu\n", trace.stop_reason.c_str(),
                         trace.iterates.size());
            write_output(out, flow_trace_to_csv(trace));
            return 0;
        }

        if (verifyc->parsed()) {
            vopt.seed = seed;
            const VerifySummary summary = run_verify(vopt);  // validates before any write
            std::printf("suite=%s space=%s trials=%d reports=%zu pass=%d fail=%d skipped=%d\n",
                        vopt.suite.c_str(), vopt.space.c_str(), vopt.trials,
                        summary.reports.size(), summary.passed, summary.failed,
                        summary.skipped);
            if (out) {
                json bundle{{"format", 1},
                            {"suite", vopt.suite},
                            {"space", vopt.space},
                            {"seed", vopt.seed},
                            {"trials", vopt.trials}};
                auto arr = json::array();
                for (const auto& r : summary.reports) arr.push_back(r.to_json());
                bundle["reports"] = std::move(arr);
                std::ofstream bf(*out);
                if (!bf) throw Error("cannot write output file: " + *out);
                bf << bundle.dump(2) << '\n';
            }
            if (verify_csv) {
                std::ofstream cf(*verify_csv);
                if (!cf) throw Error("cannot write CSV file: " + *verify_csv);
                cf << reports_to_csv(summary.reports);
            }
            return summary.failed == 0 ? 0 : 1;
        }
    } catch (const ProxError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    }
    return 2;
}
