#include "hypflow/point.hpp"

#include <cstdio>

namespace hypflow {

std::string point_to_string(const Point& p) {
    char buf[96];
    if (p.is_vertex()) {
        std::snprintf(buf, sizeof(buf), "v%d", p.vertex().v);
    } else if (p.is_edge()) {
        const auto& e = p.edge();
        std::snprintf(buf, sizeof(buf), "e(%d,%d)@%.12g", e.u, e.v, e.offset);
    } else {
        const auto& q = p.plane();
        std::snprintf(buf, sizeof(buf), "(%.12g,%.12g)", q.u, q.v);
    }
    return buf;
}

}  // namespace hypflow
