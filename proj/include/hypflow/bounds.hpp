#pragma once

#include <span>

#include "hypflow/proximal.hpp"

namespace hypflow {

// Closed-form constants of the contraction estimate's second case:
//   C1 = 2 sqrt(2 tau L delta) / sqrt(K tau + 1) + 2 delta
//   C2 = sqrt((2 tau / (K tau + 1)) (L + D / tau) C1)
//   C3 = sqrt((16 tau / (K tau + 1)) (L + (D + 2 delta) / tau) delta)
//   C  = 12 delta + 10 C1 + 6 C2 + C3          (= O(delta^{1/4}))
struct BoundConstants {
    double K = 0, L = 0, D = 0, tau = 0, delta = 0;
    double C1 = 0, C2 = 0, C3 = 0, C = 0;
};

BoundConstants constants(double K, double L, double D, double tau, double delta);

// delta fed to the checks: max(builder's declared delta, exact four-point
// estimate over the instance's own points).
double delta_check_for(const Space& space, std::span<const Point> pts);

// Tendency towards the minimizer:
//   d(p,y) <= d(p,x) - d(x,y) + 4 sqrt(2 tau L delta) / sqrt(K tau + 1).
TheoremReport check_conv(const Space& space, const Objective& f, const Point& x, double tau,
                         double delta, const ProxResult& r);

// Sharpened form for K > 0, tau > 1/K:
//   d(p,y) <= d(p,x) - (1 - 1/(K tau)) (f(x) - f(p)) / L + same delta term.
TheoremReport check_conv_d(const Space& space, const Objective& f, const Point& x, double tau,
                           double delta, const ProxResult& r);

// Step-size lower bound and one-step value decrease (K > 0, tau > 1/K):
//   d(x,y) >= (1 - 1/(K tau)) (f(x) - f(p)) / L
//   f(y)  <= f(x) - (K tau - 1)^2 (f(x) - f(p))^2 / (2 (K L)^2 tau^3).
std::vector<TheoremReport> check_step_bounds(const Space& space, const Objective& f,
                                             const Point& x, double tau, const ProxResult& r);

// Iteration complexity on a flow trace (K > 0, tau > 1/K):
//  - first N with d^2(p,x_N) <= (2 L tau/(K tau - 1)) (4 sqrt(2 tau L delta)
//    / sqrt(K tau + 1) + eps^2), with N < d(p,x0) eps^-2 (vacuous at N = 0);
//  - first N' with f(x_N') <= f(p) + K L tau sqrt(2 tau) eps / (K tau - 1),
//    with N' < (f(x0) - f(p)) eps^-2, and then
//    d^2(p,x_N') <= 2 L tau sqrt(2 tau) eps / (K tau - 1).
std::vector<TheoremReport> check_iteration(const Space& space, const Objective& f,
                                           const Point& x0, double tau, double epsilon,
                                           double delta, const FlowTrace& trace);

// Contraction estimates; relabels so d(p,y1) <= d(p,y2) and selects the
// case from the measured Gromov product (both cases on a tie):
//  (i)  d(p,y1) >= (x1|x2)_p:
//       d(y1,y2) <= d(x1,x2) - d(x1,y1) - d(x2,y2)
//                   + 8 sqrt(2 tau L delta)/sqrt(K tau + 1) + 12 delta,
//       plus the f-form when K > 0, tau > 1/K;
//  (ii) d(p,y1) < (x1|x2)_p:
//       d(y1,y2) <= d(x1,x2) - (p|x2)_{x1} + C(K, L, D, tau, delta).
std::vector<TheoremReport> check_contraction(const Space& space, const Objective& f,
                                             const Point& x1, const Point& x2, double tau,
                                             double delta, const ProxResult& r1,
                                             const ProxResult& r2);

}  // namespace hypflow
