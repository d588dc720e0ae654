#pragma once

#include "hypflow/space.hpp"

namespace hypflow {

struct Box {
    double u_min = -5, u_max = 5;
    double v_min = 0.1, v_max = 5;
};

// Upper half-plane with the curvature -1 metric
//   d(a, b) = arcosh(1 + ((u_a-u_b)^2 + (v_a-v_b)^2) / (2 v_a v_b)).
// Geodesics are vertical rays and semicircles centered on the axis v = 0.
class HalfPlaneSpace final : public Space {
public:
    HalfPlaneSpace() = default;

    static Box default_box() { return Box{}; }

    Point point(double u, double v) const;
    Point random_point_in_box(const Box& box, Rng& rng) const;

    // Geodesic polar coordinates: the point at hyperbolic distance rho from
    // x along the direction parametrized by angle alpha in [0, 2pi).
    Point exp_map(const Point& x, double alpha, double rho) const;

    SpaceId id() const override;
    std::string name() const override { return "halfplane"; }
    double distance(const Point& a, const Point& b) const override;
    GeodesicPath geodesic(const Point& a, const Point& b) const override;
    Point random_point(Rng& rng) const override;
    double declared_delta() const override { return 0.0; }
    double diameter_hint() const override;
    nlohmann::json to_json() const override;
};

}  // namespace hypflow
