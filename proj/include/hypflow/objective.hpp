#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "hypflow/report.hpp"
#include "hypflow/space.hpp"

namespace hypflow {

// A K-convex L-Lipschitz function with a known minimizer. Constructors run
// convexity and Lipschitz audits; on exact spaces (trees, half-plane) any
// violation beyond tolerance is a construction error, on perturbed trees
// the measured convexity violation is recorded as eps_cvx and carried into
// theorem reports as an explicit slack term.
class Objective {
public:
    double operator()(const Point& p) const { return eval_(p); }

    double K() const { return K_; }
    double L() const { return L_; }
    const Point& minimizer() const { return minimizer_; }
    double min_value() const { return min_value_; }
    std::optional<double> valid_radius() const { return valid_radius_; }
    double eps_cvx() const { return eps_cvx_; }
    const nlohmann::json& descriptor() const { return descriptor_; }

    Objective(std::function<double(const Point&)> eval, double K, double L, Point minimizer,
              double min_value, std::optional<double> valid_radius, double eps_cvx,
              nlohmann::json descriptor)
        : eval_(std::move(eval)), K_(K), L_(L), minimizer_(std::move(minimizer)),
          min_value_(min_value), valid_radius_(valid_radius), eps_cvx_(eps_cvx),
          descriptor_(std::move(descriptor)) {}

private:
    std::function<double(const Point&)> eval_;
    double K_ = 0;
    double L_ = 1;
    Point minimizer_;
    double min_value_ = 0;
    std::optional<double> valid_radius_;
    double eps_cvx_ = 0;
    nlohmann::json descriptor_;
};

inline constexpr std::uint64_t kAuditSeed = 0xA0D17ULL;
inline constexpr int kAuditSamples = 200;

// f = a * d(p, .), K = 0, L = a, exact minimum 0 at p.
Objective distance_objective(const SpacePtr& space, const Point& p, double a,
                             std::uint64_t audit_seed = kAuditSeed);

// f = (K/2) * d^2(p, .), minimum 0 at p; L = K * R certified on B(p, R).
Objective squared_distance_objective(const SpacePtr& space, const Point& p, double K, double R,
                                     std::uint64_t audit_seed = kAuditSeed);

// Constant c; declared 1-Lipschitz (not tight), minimizer is `at`.
Objective constant_objective(const SpacePtr& space, const Point& at, double c);

// Pointwise sum: K = K1 + K2, L = L1 + L2; minimizer located numerically
// over the space's candidate set and audited (construction error if the
// located minimum is beaten by any probe).
Objective combine_sum(const SpacePtr& space, const Objective& f1, const Objective& f2,
                      std::uint64_t audit_seed = kAuditSeed);

// Max violation of the K-convexity inequality along canonical geodesics of
// `sample_count` random pairs, evaluated on a t-grid (t_grid >= 3 points).
// Values <= tol_check(scale) mean pass.
double audit_convexity(const Space& space, const Objective& f, double K, int sample_count,
                       std::uint64_t seed, int t_grid = 9);

// Max of |f(x) - f(y)| - L d(x,y) over random pairs, restricted to the
// certified ball when the objective declares one.
double audit_lipschitz(const Space& space, const Objective& f, double L, int sample_count,
                       std::uint64_t seed);

// Checks, for sampled x: f(p) + (K/2) d^2(p,x) <= f(x) <= f(p) + L d(p,x),
// d(p,x) <= 2L/K and f(x) - f(p) <= 2L^2/K. Skipped when K = 0.
TheoremReport a_priori_check(const Space& space, const Objective& f, int samples,
                             std::uint64_t seed);

}  // namespace hypflow
