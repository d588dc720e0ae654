#pragma once

#include <variant>
#include <vector>

#include "hypflow/point.hpp"

namespace hypflow {

// Constant-speed minimal geodesic, sampled by parameter t in [0, 1].
//
// Graph payload: a polyline of single-edge segments. Half-plane payloads
// are analytic (vertical ray, or circular arc centered on the boundary
// axis parametrized through h = ln tan(theta/2), which is exactly the
// hyperbolic arclength coordinate along the arc).
class GeodesicPath {
public:
    struct GraphSeg {
        int u = 0, v = 0;        // canonical edge, u < v
        double o0 = 0, o1 = 0;   // offsets from u at segment start/end
        double s0 = 0;           // arclength at segment start
        double edge_w = 0;       // full weight of the host edge
    };
    struct GraphPayload {
        std::vector<GraphSeg> segs;
    };
    struct VerticalPayload {
        double u = 0, v0 = 1, v1 = 1;
    };
    struct ArcPayload {
        double cx = 0, r = 1;    // center (cx, 0), radius r
        double h0 = 0, h1 = 0;   // arclength coordinates of the endpoints
    };
    using Payload = std::variant<GraphPayload, VerticalPayload, ArcPayload>;

    GeodesicPath(Point a, Point b, double length, Payload payload)
        : a_(std::move(a)), b_(std::move(b)), length_(length), payload_(std::move(payload)) {}

    const Point& start() const { return a_; }
    const Point& end() const { return b_; }
    double length() const { return length_; }
    SpaceId host() const { return a_.host; }

    Point sample(double t) const;

private:
    Point a_, b_;
    double length_;
    Payload payload_;
};

}  // namespace hypflow
