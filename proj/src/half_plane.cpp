#include "hypflow/half_plane.hpp"

#include <cmath>

namespace hypflow {

namespace {

constexpr SpaceId kHalfPlaneId = 0x68616C66706C616EULL;  // "halfplane" tag

PlaneLoc require_plane(const Point& p, const char* where) {
    if (!p.is_plane()) throw Error(std::string(where) + ": not a half-plane point");
    return p.plane();
}

// Arclength coordinate along a circular-arc geodesic: h(theta) = ln tan(theta/2).
// Hyperbolic distance between arc points is exactly |h1 - h0|.
double arc_h(double theta) { return std::log(std::tan(0.5 * theta)); }

}  // namespace

SpaceId HalfPlaneSpace::id() const { return kHalfPlaneId; }

Point HalfPlaneSpace::point(double u, double v) const {
    if (!(v > 0)) throw Error("HalfPlaneSpace::point: v must be positive");
    Point p;
    p.host = id();
    p.loc = PlaneLoc{u, v};
    return p;
}

double HalfPlaneSpace::distance(const Point& a, const Point& b) const {
    require_host(a, "distance");
    require_host(b, "distance");
    const auto pa = require_plane(a, "distance");
    const auto pb = require_plane(b, "distance");
    const double du = pa.u - pb.u, dv = pa.v - pb.v;
    return acosh1p((du * du + dv * dv) / (2.0 * pa.v * pb.v));
}

GeodesicPath HalfPlaneSpace::geodesic(const Point& a, const Point& b) const {
    require_host(a, "geodesic");
    require_host(b, "geodesic");
    const auto pa = require_plane(a, "geodesic");
    const auto pb = require_plane(b, "geodesic");
    const double len = distance(a, b);
    if (len == 0.0) return GeodesicPath(a, b, 0.0, GeodesicPath::GraphPayload{});

    const double scale = 1.0 + std::abs(pa.u) + std::abs(pb.u);
    if (std::abs(pa.u - pb.u) <= 1e-14 * scale) {
        return GeodesicPath(a, b, len, GeodesicPath::VerticalPayload{pa.u, pa.v, pb.v});
    }
    // circular arc centered on the boundary axis
    const double cx =
        (pb.u * pb.u + pb.v * pb.v - pa.u * pa.u - pa.v * pa.v) / (2.0 * (pb.u - pa.u));
    const double r = std::hypot(pa.u - cx, pa.v);
    const double h0 = arc_h(std::atan2(pa.v, pa.u - cx));
    const double h1 = arc_h(std::atan2(pb.v, pb.u - cx));
    if (std::abs(std::abs(h1 - h0) - len) > 1e-9 * (1.0 + len))
        throw Error("geodesic: arc parametrization inconsistent with the distance");
    return GeodesicPath(a, b, len, GeodesicPath::ArcPayload{cx, r, h0, h1});
}

Point HalfPlaneSpace::exp_map(const Point& x, double alpha, double rho) const {
    require_host(x, "exp_map");
    const auto px = require_plane(x, "exp_map");
    // rotate the vertical ray from i by alpha (Moebius rotation about i),
    // then translate i -> x
    const double c = std::cos(0.5 * alpha), s = std::sin(0.5 * alpha);
    const double wu = 0.0, wv = std::exp(rho);  // e^rho * i
    // (w c + s) / (-w s + c) with w = wu + i wv
    const double nu = wu * c + s, nv = wv * c;
    const double du = -wu * s + c, dv = -wv * s;
    const double den = du * du + dv * dv;
    const double zu = (nu * du + nv * dv) / den;
    const double zv = (nv * du - nu * dv) / den;
    return point(zu * px.v + px.u, zv * px.v);
}

Point HalfPlaneSpace::random_point_in_box(const Box& box, Rng& rng) const {
    return point(rng.uniform(box.u_min, box.u_max), rng.uniform(box.v_min, box.v_max));
}

Point HalfPlaneSpace::random_point(Rng& rng) const {
    return random_point_in_box(default_box(), rng);
}

double HalfPlaneSpace::diameter_hint() const {
    const Box b = default_box();
    Point lo = point(b.u_min, b.v_min), hi = point(b.u_max, b.v_min);
    return distance(lo, hi);  // corner pair at lowest v dominates in the box
}

nlohmann::json HalfPlaneSpace::to_json() const {
    return {{"format", 1}, {"type", "halfplane"}};
}

}  // namespace hypflow
