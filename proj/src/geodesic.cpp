#include "hypflow/geodesic.hpp"

#include <algorithm>
#include <cmath>

namespace hypflow {

namespace {

Point graph_point(SpaceId host, const GeodesicPath::GraphSeg& seg, double offset) {
    // Snap exact endpoints to the vertex form; tiny numerical residue at
    // the ends of a segment is snapped too (1e-12 relative scale).
    const double snap = 1e-12 * (1.0 + seg.edge_w);
    Point p;
    p.host = host;
    if (offset <= snap) {
        p.loc = VertexLoc{seg.u};
    } else if (offset >= seg.edge_w - snap) {
        p.loc = VertexLoc{seg.v};
    } else {
        p.loc = EdgeLoc{seg.u, seg.v, offset};
    }
    return p;
}

}  // namespace

Point GeodesicPath::sample(double t) const {
    if (t < -1e-9 || t > 1.0 + 1e-9) throw Error("GeodesicPath::sample: t outside [0,1]");
    t = std::clamp(t, 0.0, 1.0);
    if (t == 0.0) return a_;
    if (t == 1.0) return b_;
    if (length_ == 0.0) return a_;

    if (const auto* g = std::get_if<GraphPayload>(&payload_)) {
        const double s = t * length_;
        // last segment with s0 <= s
        size_t lo = 0, hi = g->segs.size();
        while (hi - lo > 1) {
            size_t mid = (lo + hi) / 2;
            if (g->segs[mid].s0 <= s) lo = mid; else hi = mid;
        }
        const auto& seg = g->segs[lo];
        const double seg_len = std::abs(seg.o1 - seg.o0);
        double frac = seg_len > 0 ? (s - seg.s0) / seg_len : 0.0;
        frac = std::clamp(frac, 0.0, 1.0);
        return graph_point(host(), seg, seg.o0 + (seg.o1 - seg.o0) * frac);
    }
    if (const auto* v = std::get_if<VerticalPayload>(&payload_)) {
        Point p;
        p.host = host();
        p.loc = PlaneLoc{v->u, v->v0 * std::exp(t * std::log(v->v1 / v->v0))};
        return p;
    }
    const auto& arc = std::get<ArcPayload>(payload_);
    const double h = arc.h0 + t * (arc.h1 - arc.h0);
    const double theta = 2.0 * std::atan(std::exp(std::min(h, 700.0)));
    Point p;
    p.host = host();
    p.loc = PlaneLoc{arc.cx + arc.r * std::cos(theta), arc.r * std::sin(theta)};
    return p;
}

}  // namespace hypflow
