#pragma once

#include <string>
#include <vector>

#include "hypflow/objective.hpp"

namespace hypflow {

struct ProxConfig {
    double grid_step = 0.05;        // coarse search resolution (auto-capped at tau*L)
    double refine_xtol = 1e-9;      // golden-section / pattern-search position tolerance
    double refine_tol_scale = 1e-8; // certificate tolerance = scale * (1 + |f(x)|)
    int certificate_samples = 500;  // extra random probes in the search ball
    std::uint64_t probe_seed = 0x9B0BE5ULL;
};

// One accepted proximal step y ~ argmin { f(y) + d^2(x,y) / (2 tau) }.
struct ProxResult {
    Point y;
    double moreau_value = 0;   // f(y) + d^2(x,y)/(2 tau)
    double displacement = 0;   // d(x, y)
    double certificate = 0;    // max over probes z of moreau(y) - moreau(z), clamped at 0
    double f_y = 0;
    double tau = 0;
};

class ProxError : public Error {
public:
    ProxError(const std::string& what, ProxResult best)
        : Error(what), best_candidate(std::move(best)) {}
    ProxResult best_candidate;
};

// Deterministic tie-break: smallest Moreau value, then smallest point in
// encoding order. Throws ProxError if the certificate fails after the
// refinement budget.
ProxResult prox(const Space& space, const Objective& f, const Point& x, double tau,
                const ProxConfig& config = {});

// Piecewise-linear convex table on [0, T]: breakpoints s (s[0] = 0,
// strictly increasing) with values f. Slopes must be non-decreasing and
// the first slope nonnegative (minimum attained at 0).
struct PwlConvex {
    std::vector<double> s;
    std::vector<double> f;

    double T() const { return s.back(); }
    double eval(double x) const;
    void validate() const;  // throws on non-convex / decreasing-at-0 tables
};

// Exact minimizer of f(s) + (t-s)^2 / (2 tau): solved on each linear piece.
double prox_1d(const PwlConvex& f, double t, double tau);

struct FlowIterate {
    Point x;
    double f_value = 0;
    double dist_to_p = 0;
    double displacement = 0;   // from the previous iterate
    double moreau_value = 0;   // attained prox value (f_value for iterate 0)
};

struct FlowTrace {
    std::vector<FlowIterate> iterates;
    double tau = 0;
    double epsilon = 0;
    std::string stop_reason;   // "ball_reached" | "unproductive" | "stationary" | "budget"
};

// Iterates prox from x0. Stops when the target ball of the iteration bound
// is reached (K > 0, tau > 1/K only; uses the space's declared delta), when
// a step decreases d(p, .) by less than epsilon^2, when the iterate stops
// moving, or when max_iter steps have been taken.
FlowTrace flow(const Space& space, const Objective& f, const Point& x0, double tau,
               double epsilon, int max_iter, const ProxConfig& config = {});

std::string flow_trace_to_csv(const FlowTrace& trace);

}  // namespace hypflow
