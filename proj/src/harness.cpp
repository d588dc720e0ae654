#include "hypflow/harness.hpp"

#include <algorithm>
#include <cmath>

#include "hypflow/metric_ops.hpp"
#include "hypflow/serialize.hpp"

namespace hypflow {

namespace {

const std::vector<std::string> kSuites = {"conv",      "conv_d",      "step", "iteration",
                                          "contraction", "lemmas",     "all"};

bool suite_enabled(const std::string& suite, const char* name) {
    return suite == "all" || suite == name;
}

void push(std::vector<TheoremReport>& out, TheoremReport rep, int trial, std::uint64_t seed) {
    rep.inputs["trial"] = trial;
    rep.seed = seed;
    out.push_back(std::move(rep));
}

// delta_check for a handful of instance points, optionally padded with
// samples along a geodesic (covers the quadruples the lemma proofs touch).
double instance_delta(const Space& space, std::vector<Point> pts) {
    return delta_check_for(space, pts);
}

double strong_tau(const Objective& f, Rng& rng) {
    // tau in (1/K, 4/K]
    const double u = std::max(rng.uniform(), 1e-6);
    return (1.0 + 3.0 * u) / f.K();
}

}  // namespace

std::shared_ptr<const GraphSpace> make_trial_tree(Rng& rng) {
    const int n = static_cast<int>(rng.uniform_int(6, 16));
    return build_random_tree(n, 0.5, 2.0, rng.next_u64());
}

PerturbedTree make_trial_perturbed(Rng& rng, double delta_build) {
    auto base = make_trial_tree(rng);
    const int detours = static_cast<int>(rng.uniform_int(1, 3));
    return build_perturbed_tree(base, delta_build, detours, rng.next_u64());
}

Objective make_trial_objective(const SpacePtr& space, Rng& rng, bool require_strong) {
    const Point p = space->random_point(rng);
    const bool strong = require_strong || rng.uniform() < 0.5;
    const std::uint64_t audit_seed = rng.next_u64();
    if (!strong) return distance_objective(space, p, rng.uniform(0.5, 2.0), audit_seed);
    const double K = rng.uniform(0.5, 2.0);
    const double R = 1.05 * space->diameter_hint();
    return squared_distance_objective(space, p, K, R, audit_seed);
}

FlowTrace run_flow_for_iteration(const Space& space, const Objective& f, const Point& x0,
                                 double tau, double epsilon, const ProxConfig& config) {
    FlowTrace total = flow(space, f, x0, tau, epsilon / 4.0, 400, config);
    const double K = f.K(), L = f.L();
    if (!(K > 0) || !(tau > 1.0 / K)) return total;

    // extend the orbit until the value threshold of the iteration bound is
    // covered (the d-ball target is implied by the flow's own stop rule)
    const double f_thr =
        f.min_value() + K * L * tau * std::sqrt(2.0 * tau) * epsilon / (K * tau - 1.0);
    const double stationary_tol = 1e-8 * (1.0 + 2.0 * tau * L);
    Point cur = total.iterates.back().x;
    int guard = 0;
    while (total.iterates.back().f_value > f_thr && guard++ < 600) {
        const ProxResult r = prox(space, f, cur, tau, config);
        if (r.displacement <= stationary_tol) break;
        total.iterates.push_back(
            {r.y, r.f_y, space.distance(f.minimizer(), r.y), r.displacement, r.moreau_value});
        cur = r.y;
    }
    return total;
}

namespace {

void run_conv_trial(std::vector<TheoremReport>& out, const SpacePtr& space, Rng& rng, int trial,
                    const VerifyOptions& opt, bool sharpened) {
    Objective f = make_trial_objective(space, rng, sharpened);
    const Point x = space->random_point(rng);
    const double tau = sharpened ? strong_tau(f, rng) : rng.uniform(opt.tau_min, opt.tau_max);
    const ProxResult r = prox(*space, f, x, tau);
    const double dck = instance_delta(*space, {f.minimizer(), x, r.y});
    if (sharpened)
        push(out, check_conv_d(*space, f, x, tau, dck, r), trial, rng.seed());
    else
        push(out, check_conv(*space, f, x, tau, dck, r), trial, rng.seed());
}

void run_step_trial(std::vector<TheoremReport>& out, const SpacePtr& space, Rng& rng,
                    int trial) {
    Objective f = make_trial_objective(space, rng, true);
    const Point x = space->random_point(rng);
    const double tau = strong_tau(f, rng);
    const ProxResult r = prox(*space, f, x, tau);
    for (auto& rep : check_step_bounds(*space, f, x, tau, r)) push(out, rep, trial, rng.seed());
}

void run_iteration_trial(std::vector<TheoremReport>& out, const SpacePtr& space, Rng& rng,
                         int trial) {
    Objective f = make_trial_objective(space, rng, true);
    const Point x0 = space->random_point(rng);
    const double tau = strong_tau(f, rng);
    const double epsilon = rng.uniform(0.4, 1.2);
    const FlowTrace trace = run_flow_for_iteration(*space, f, x0, tau, epsilon);
    const Point mid = trace.iterates[trace.iterates.size() / 2].x;
    const double dck =
        instance_delta(*space, {f.minimizer(), x0, mid, trace.iterates.back().x});
    for (auto& rep : check_iteration(*space, f, x0, tau, epsilon, dck, trace))
        push(out, rep, trial, rng.seed());
}

void run_contraction_trial(std::vector<TheoremReport>& out, const SpacePtr& space, Rng& rng,
                           int trial, const VerifyOptions& opt) {
    Objective f = make_trial_objective(space, rng, rng.uniform() < 0.5);
    const Point x1 = space->random_point(rng);
    const Point x2 = space->random_point(rng);
    const double tau =
        f.K() > 0 ? strong_tau(f, rng) : rng.uniform(opt.tau_min, opt.tau_max);
    const ProxResult r1 = prox(*space, f, x1, tau);
    const ProxResult r2 = prox(*space, f, x2, tau);
    const double dck = instance_delta(*space, {f.minimizer(), x1, x2, r1.y, r2.y});
    for (auto& rep : check_contraction(*space, f, x1, x2, tau, dck, r1, r2))
        push(out, rep, trial, rng.seed());
}

void run_lemma_trial(std::vector<TheoremReport>& out, const SpacePtr& space, Rng& rng,
                     int trial) {
    const Point x = space->random_point(rng);
    const Point y = space->random_point(rng);
    const Point z = space->random_point(rng);

    const GeodesicPath gyz = space->geodesic(y, z);
    std::vector<Point> cloud{x, y, z};
    for (int i = 1; i <= 7; ++i) cloud.push_back(gyz.sample(i / 8.0));
    const double dck = instance_delta(*space, cloud);

    // tripod lemma at a random admissible radius
    const double product_x = gromov_product(*space, x, y, z);
    const double r = rng.uniform() * product_x;
    push(out, check_tripod_lemma(*space, x, y, z, std::max(0.0, r), dck), trial, rng.seed());

    // projection lemma with random sigma and placements
    const Point p = space->random_point(rng);
    const double product_p = gromov_product(*space, p, y, z);
    const double sigma = rng.uniform(0.0, 1.0);
    auto place = [&](const Point& xi) {
        const double d = space->distance(p, xi);
        if (d <= 0) return xi;
        const double t_lo = std::clamp((product_p - sigma) / d, 0.0, 1.0);
        return space->geodesic(p, xi).sample(rng.uniform(t_lo, 1.0));
    };
    push(out, check_projection_lemma(*space, p, y, z, place(y), place(z), sigma, dck), trial,
         rng.seed());

    // sandwich between the Gromov product and the distance to the geodesic
    const double dist = distance_to_geodesic(*space, x, gyz);
    auto upper = TheoremReport::make("dxg_upper", product_x, dist,
                                     {{"space", space->name()}});
    upper.delta_check = dck;
    push(out, std::move(upper), trial, rng.seed());
    auto lower = TheoremReport::make("dxg_lower", dist - 2.0 * dck, product_x,
                                     {{"space", space->name()}});
    lower.delta_check = dck;
    push(out, std::move(lower), trial, rng.seed());
}

}  // namespace

VerifySummary run_verify(const VerifyOptions& opt) {
    if (std::find(kSuites.begin(), kSuites.end(), opt.suite) == kSuites.end())
        throw Error("unknown suite '" + opt.suite + "'");
    if (opt.trials < 1) throw Error("verify: trials must be positive");

    SpacePtr fixed;
    if (opt.space == "tripod") fixed = build_tripod(2, 3, 4);
    else if (opt.space == "path") fixed = build_path(10);
    else if (opt.space == "halfplane") fixed = build_half_plane();
    else if (opt.space != "tree" && opt.space != "perturbed") fixed = load_space_file(opt.space);

    VerifySummary summary;
    Rng root(opt.seed);
    for (int trial = 0; trial < opt.trials; ++trial) {
        Rng rng = root.fork(static_cast<std::uint64_t>(trial));
        SpacePtr space = fixed;
        if (opt.space == "tree") space = make_trial_tree(rng);
        else if (opt.space == "perturbed") space = make_trial_perturbed(rng, opt.delta_build).space;

        if (suite_enabled(opt.suite, "conv"))
            run_conv_trial(summary.reports, space, rng, trial, opt, false);
        if (suite_enabled(opt.suite, "conv_d"))
            run_conv_trial(summary.reports, space, rng, trial, opt, true);
        if (suite_enabled(opt.suite, "step")) run_step_trial(summary.reports, space, rng, trial);
        if (suite_enabled(opt.suite, "iteration"))
            run_iteration_trial(summary.reports, space, rng, trial);
        if (suite_enabled(opt.suite, "contraction"))
            run_contraction_trial(summary.reports, space, rng, trial, opt);
        if (suite_enabled(opt.suite, "lemmas")) run_lemma_trial(summary.reports, space, rng, trial);
    }
    for (const auto& r : summary.reports) {
        if (r.skipped()) ++summary.skipped;
        else if (r.pass) ++summary.passed;
        else ++summary.failed;
    }
    return summary;
}

}  // namespace hypflow
