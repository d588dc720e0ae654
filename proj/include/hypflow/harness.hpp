#pragma once

#include <string>
#include <vector>

#include "hypflow/bounds.hpp"
#include "hypflow/builders.hpp"

namespace hypflow {

// Randomized theorem-suite driver shared by the CLI and the acceptance
// tests. All instances are generated from the (suite, options, seed)
// triple alone, so identical invocations reproduce identical reports.
struct VerifyOptions {
    std::string suite = "all";      // conv|conv_d|step|iteration|contraction|lemmas|all
    std::string space = "tree";     // tree|perturbed|tripod|path|halfplane|<file>
    int trials = 100;
    std::uint64_t seed = 7;
    double delta_build = 0.05;      // perturbed-tree detour parameter
    double tau_min = 0.5, tau_max = 4.0;
};

struct VerifySummary {
    std::vector<TheoremReport> reports;
    int passed = 0, failed = 0, skipped = 0;
};

VerifySummary run_verify(const VerifyOptions& options);

// Instance generators (seed-deterministic).
std::shared_ptr<const GraphSpace> make_trial_tree(Rng& rng);
PerturbedTree make_trial_perturbed(Rng& rng, double delta_build);

// Random objective on the space: distance form, or the squared-distance
// form with its Lipschitz ball covering the whole space.
Objective make_trial_objective(const SpacePtr& space, Rng& rng, bool require_strong);

// Runs `flow` with a finer internal epsilon and extends the orbit until it
// covers both targets of the iteration bounds at `epsilon` (or provably
// cannot). The returned trace is a prefix of the prox orbit from x0.
FlowTrace run_flow_for_iteration(const Space& space, const Objective& f, const Point& x0,
                                 double tau, double epsilon, const ProxConfig& config = {});

}  // namespace hypflow
