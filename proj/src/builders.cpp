#include "hypflow/builders.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hypflow {

namespace {

// Quantize to a dyadic grid so tree distances (sums of weights) stay exact
// in double arithmetic.
double quantize(double x) { return std::round(x * 1024.0) / 1024.0; }

}  // namespace

std::shared_ptr<const GraphSpace> build_tripod(double a, double b, double c) {
    if (!(a > 0) || !(b > 0) || !(c > 0)) throw Error("build_tripod: arm lengths must be positive");
    std::vector<GraphSpace::Edge> edges{{0, 1, a}, {0, 2, b}, {0, 3, c}};
    char name[64];
    std::snprintf(name, sizeof(name), "tripod(%g,%g,%g)", a, b, c);
    return std::make_shared<GraphSpace>(4, std::move(edges), GraphKind::Tree, 0.0, name);
}

std::shared_ptr<const GraphSpace> build_path(double length) {
    if (!(length > 0)) throw Error("build_path: length must be positive");
    std::vector<GraphSpace::Edge> edges{{0, 1, length}};
    char name[48];
    std::snprintf(name, sizeof(name), "path(%g)", length);
    return std::make_shared<GraphSpace>(2, std::move(edges), GraphKind::Tree, 0.0, name);
}

std::shared_ptr<const GraphSpace> build_cycle(int n, double w) {
    if (n < 3) throw Error("build_cycle: need at least 3 vertices");
    if (!(w > 0)) throw Error("build_cycle: weight must be positive");
    std::vector<GraphSpace::Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, w});
    char name[48];
    std::snprintf(name, sizeof(name), "cycle(%d,%g)", n, w);
    return std::make_shared<GraphSpace>(n, std::move(edges), GraphKind::General, 0.0, name);
}

std::shared_ptr<const GraphSpace> build_random_tree(int n, double lo, double hi,
                                                    std::uint64_t seed) {
    if (n < 2) throw Error("build_random_tree: need n >= 2");
    if (!(lo > 0) || !(hi >= lo)) throw Error("build_random_tree: invalid weight range");
    Rng rng(seed);
    std::vector<GraphSpace::Edge> edges;
    for (int i = 1; i < n; ++i) {
        const int parent = static_cast<int>(rng.uniform_int(0, i - 1));
        double w = quantize(rng.uniform(lo, hi));
        if (!(w > 0)) w = 1.0 / 1024.0;
        edges.push_back({parent, i, w});
    }
    char name[64];
    std::snprintf(name, sizeof(name), "rtree(n=%d,seed=%llu)", n,
                  static_cast<unsigned long long>(seed));
    return std::make_shared<GraphSpace>(n, std::move(edges), GraphKind::Tree, 0.0, name);
}

PerturbedTree build_perturbed_tree(const std::shared_ptr<const GraphSpace>& base,
                                   double delta_build, int detour_count, std::uint64_t seed) {
    if (!base || !base->is_tree()) throw Error("build_perturbed_tree: base must be a tree");
    if (!(delta_build > 0)) throw Error("build_perturbed_tree: delta_build must be positive");
    if (detour_count < 1) throw Error("build_perturbed_tree: need at least one detour");

    std::vector<GraphSpace::Edge> eligible;
    for (const auto& e : base->edges())
        if (e.w >= delta_build) eligible.push_back(e);
    if (static_cast<int>(eligible.size()) < detour_count)
        throw Error("build_perturbed_tree: not enough edges long enough to host detours");

    Rng rng(seed);
    for (int i = 0; i < detour_count; ++i) {
        const auto j = rng.uniform_int(i, static_cast<std::int64_t>(eligible.size()) - 1);
        std::swap(eligible[static_cast<size_t>(i)], eligible[static_cast<size_t>(j)]);
    }
    eligible.resize(static_cast<size_t>(detour_count));

    std::vector<GraphSpace::Edge> edges = base->edges();
    std::vector<Detour> detours;
    int next = base->vertex_count();
    for (const auto& host : eligible) {
        const double l_seg = std::min(delta_build, host.w / 3.0);
        const double a = (host.w - l_seg) / 2.0;
        Detour d;
        d.u = host.u; d.v = host.v; d.w = host.w;
        d.w1 = next++; d.w2 = next++; d.m = next++;
        d.a = a; d.l_seg = l_seg;
        edges.erase(std::find_if(edges.begin(), edges.end(), [&](const GraphSpace::Edge& e) {
            return e.u == host.u && e.v == host.v;
        }));
        edges.push_back({d.u, d.w1, a});
        edges.push_back({d.w1, d.w2, l_seg});
        edges.push_back({d.w2, d.v, host.w - a - l_seg});
        const double half = (l_seg + 2.0 * delta_build) / 2.0;
        edges.push_back({d.w1, d.m, half});
        edges.push_back({d.m, d.w2, half});
        detours.push_back(d);
    }
    char name[128];
    std::snprintf(name, sizeof(name), "%s+detours(%d,db=%g,seed=%llu)", base->name().c_str(),
                  detour_count, delta_build, static_cast<unsigned long long>(seed));
    PerturbedTree out;
    out.space = std::make_shared<GraphSpace>(next, std::move(edges), GraphKind::PerturbedTree,
                                             6.0 * delta_build, name);
    out.base = base;
    out.delta_build = delta_build;
    out.detours = std::move(detours);
    return out;
}

Point PerturbedTree::embed(const Point& base_point) const {
    base->require_host(base_point, "PerturbedTree::embed");
    if (base_point.is_vertex()) return space->vertex_point(base_point.vertex().v);
    const auto& e = base_point.edge();
    for (const auto& d : detours) {
        if (d.u == e.u && d.v == e.v) {
            if (e.offset <= d.a) return space->point_on_edge(d.u, d.w1, e.offset);
            if (e.offset <= d.a + d.l_seg)
                return space->point_on_edge(d.w1, d.w2, e.offset - d.a);
            return space->point_on_edge(d.w2, d.v, e.offset - d.a - d.l_seg);
        }
    }
    return space->point_on_edge(e.u, e.v, e.offset);
}

std::shared_ptr<const HalfPlaneSpace> build_half_plane() {
    return std::make_shared<HalfPlaneSpace>();
}

}  // namespace hypflow
