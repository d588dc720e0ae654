#include "hypflow/serialize.hpp"

#include <fstream>

#include "hypflow/builders.hpp"
#include "hypflow/graph_space.hpp"
#include "hypflow/half_plane.hpp"

namespace hypflow {

namespace {

GraphKind kind_from_string(const std::string& s) {
    if (s == "tree") return GraphKind::Tree;
    if (s == "perturbed") return GraphKind::PerturbedTree;
    if (s == "general") return GraphKind::General;
    throw Error("space document: unknown kind '" + s + "'");
}

}  // namespace

SpacePtr space_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw Error("space document: expected an object with a 'type' field");
    const std::string type = j.at("type").get<std::string>();
    if (j.contains("format") && j.at("format").get<int>() != 1)
        throw Error("space document: unsupported format version");

    if (type == "halfplane") return build_half_plane();
    if (type != "graph") throw Error("space document: unknown type '" + type + "'");

    const auto& verts = j.at("vertices");
    const int n = static_cast<int>(verts.size());
    for (int i = 0; i < n; ++i)
        if (verts.at(static_cast<size_t>(i)).get<int>() != i)
            throw Error("space document: vertices must be 0..n-1 in order");

    std::vector<GraphSpace::Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3)
            throw Error("space document: each edge must be [u, v, w]");
        edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    }
    GraphKind kind = GraphKind::General;
    if (j.contains("kind")) {
        kind = kind_from_string(j.at("kind").get<std::string>());
    } else if (static_cast<int>(edges.size()) == n - 1) {
        kind = GraphKind::Tree;
    }
    const double declared = j.value("declared_delta", 0.0);
    return std::make_shared<GraphSpace>(n, std::move(edges), kind, declared,
                                        j.value("name", std::string("graph")));
}

SpacePtr load_space_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open space file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("space file " + path + ": " + e.what());
    }
    return space_from_json(j);
}

nlohmann::json point_to_json(const Point& p) {
    if (p.is_vertex()) return {{"vertex", p.vertex().v}};
    if (p.is_edge())
        return {{"edge", {p.edge().u, p.edge().v}}, {"offset", p.edge().offset}};
    return {{"u", p.plane().u}, {"v", p.plane().v}};
}

Point point_from_json(const Space& space, const nlohmann::json& j) {
    if (!j.is_object()) throw Error("point: expected an object");
    if (j.contains("vertex")) {
        const auto* g = dynamic_cast<const GraphSpace*>(&space);
        if (!g) throw Error("point: vertex form requires a graph space");
        return g->vertex_point(j.at("vertex").get<int>());
    }
    if (j.contains("edge")) {
        const auto* g = dynamic_cast<const GraphSpace*>(&space);
        if (!g) throw Error("point: edge form requires a graph space");
        const auto& e = j.at("edge");
        if (!e.is_array() || e.size() != 2) throw Error("point: edge must be [u, v]");
        return g->point_on_edge(e.at(0).get<int>(), e.at(1).get<int>(),
                                j.at("offset").get<double>());
    }
    if (j.contains("u") && j.contains("v")) {
        const auto* hp = dynamic_cast<const HalfPlaneSpace*>(&space);
        if (!hp) throw Error("point: (u, v) form requires the half-plane");
        return hp->point(j.at("u").get<double>(), j.at("v").get<double>());
    }
    throw Error("point: unrecognized encoding");
}

Objective objective_from_json(const SpacePtr& space, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw Error("objective descriptor: expected an object with a 'type' field");
    const std::string type = j.at("type").get<std::string>();
    if (type == "distance") {
        return distance_objective(space, point_from_json(*space, j.at("p")),
                                  j.at("a").get<double>());
    }
    if (type == "sqdist") {
        return squared_distance_objective(space, point_from_json(*space, j.at("p")),
                                          j.at("K").get<double>(), j.at("R").get<double>());
    }
    if (type == "constant") {
        const auto* g = dynamic_cast<const GraphSpace*>(space.get());
        const Point at = g ? g->vertex_point(0)
                           : dynamic_cast<const HalfPlaneSpace&>(*space).point(0.0, 1.0);
        return constant_objective(space, at, j.at("c").get<double>());
    }
    if (type == "sum") {
        const auto& terms = j.at("terms");
        if (!terms.is_array() || terms.empty()) throw Error("objective sum: empty term list");
        Objective acc = objective_from_json(space, terms.at(0));
        for (size_t i = 1; i < terms.size(); ++i)
            acc = combine_sum(space, acc, objective_from_json(space, terms.at(i)));
        return acc;
    }
    throw Error("objective descriptor: unknown type '" + type + "'");
}

}  // namespace hypflow
