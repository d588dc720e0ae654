#pragma once

#include <array>
#include <span>
#include <vector>

#include "hypflow/report.hpp"
#include "hypflow/space.hpp"

namespace hypflow {

// (x|y)_base = (d(base,x) + d(base,y) - d(x,y)) / 2.
double gromov_product(const Space& space, const Point& base, const Point& x, const Point& y);

struct DeltaEstimate {
    double delta_hat = 0;                 // max four-point deficiency, clamped at 0
    std::array<Point, 4> witness;         // (p, x, y, z) attaining the max
    long long sample_count = 0;           // quadruples examined

    // Re-evaluates the witness quadruple; equals delta_hat when positive.
    double replay(const Space& space) const;
};

// Exact mode: every ordered quadruple of distinct indices (O(n^4) products
// over a precomputed pairwise distance table). The result is a lower bound
// on the true delta of the space; it is exact only relative to the sample.
DeltaEstimate four_point_delta_exact(const Space& space, std::span<const Point> pts);

// Sampled mode: `count` random quadruples of distinct points, seeded.
DeltaEstimate four_point_delta_sampled(const Space& space, std::span<const Point> pts,
                                       std::uint64_t seed, long long count);

// min_t d(x, gamma(t)) over a uniform grid of `grid` points, refined by
// golden-section search around the best bracket.
double distance_to_geodesic(const Space& space, const Point& x, const GeodesicPath& path,
                            int grid = 65);

// Places y' on [x->y] and z' on [x->z] at distance r from x (requires
// r <= (y|z)_x) and checks d(y', z') <= 4 * delta.
TheoremReport check_tripod_lemma(const Space& space, const Point& x, const Point& y,
                                 const Point& z, double r, double delta);

// Requires y_i on the constructed geodesic p -> x_i with
// min(d(p,y1), d(p,y2)) >= (x1|x2)_p - sigma; checks
// |(x1|x2)_p - (y1|y2)_p| <= 6 * delta + sigma. Precondition violations
// are reported as skipped, not failed.
TheoremReport check_projection_lemma(const Space& space, const Point& p, const Point& x1,
                                     const Point& x2, const Point& y1, const Point& y2,
                                     double sigma, double delta);

}  // namespace hypflow
