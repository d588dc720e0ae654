#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "hypflow/common.hpp"

namespace hypflow {

using SpaceId = std::uint64_t;

// Location on a graph space: a vertex, or an interior position on an
// undirected edge. Edge positions are canonical: u < v, offset measured
// from u, strictly inside (0, weight). Exact endpoint offsets collapse to
// the vertex form so point equality is well defined.
struct VertexLoc {
    int v = 0;
    friend bool operator==(const VertexLoc&, const VertexLoc&) = default;
};

struct EdgeLoc {
    int u = 0;
    int v = 0;
    double offset = 0.0;
    friend bool operator==(const EdgeLoc&, const EdgeLoc&) = default;
};

// Upper half-plane coordinates, v > 0.
struct PlaneLoc {
    double u = 0.0;
    double v = 1.0;
    friend bool operator==(const PlaneLoc&, const PlaneLoc&) = default;
};

struct Point {
    SpaceId host = 0;
    std::variant<VertexLoc, EdgeLoc, PlaneLoc> loc;

    bool is_vertex() const { return std::holds_alternative<VertexLoc>(loc); }
    bool is_edge() const { return std::holds_alternative<EdgeLoc>(loc); }
    bool is_plane() const { return std::holds_alternative<PlaneLoc>(loc); }

    const VertexLoc& vertex() const { return std::get<VertexLoc>(loc); }
    const EdgeLoc& edge() const { return std::get<EdgeLoc>(loc); }
    const PlaneLoc& plane() const { return std::get<PlaneLoc>(loc); }

    friend bool operator==(const Point&, const Point&) = default;
};

// Total order used for deterministic tie-breaking between candidate points.
inline bool point_less(const Point& a, const Point& b) {
    auto rank = [](const Point& p) { return p.loc.index(); };
    if (rank(a) != rank(b)) return rank(a) < rank(b);
    if (a.is_vertex()) return a.vertex().v < b.vertex().v;
    if (a.is_edge()) {
        const auto& ea = a.edge();
        const auto& eb = b.edge();
        if (ea.u != eb.u) return ea.u < eb.u;
        if (ea.v != eb.v) return ea.v < eb.v;
        return ea.offset < eb.offset;
    }
    const auto& pa = a.plane();
    const auto& pb = b.plane();
    if (pa.u != pb.u) return pa.u < pb.u;
    return pa.v < pb.v;
}

std::string point_to_string(const Point& p);

}  // namespace hypflow
