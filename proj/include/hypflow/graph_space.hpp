#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "hypflow/space.hpp"

namespace hypflow {

enum class GraphKind { General, Tree, PerturbedTree };

// Finite weighted graph viewed as a geodesic space: points live on edges,
// the metric is the induced path metric. All-pairs vertex distances are
// precomputed so point-to-point queries cost O(1).
//
// Construction validates: connectivity, positive weights, no self-loops or
// parallel edges, and that every edge is an isometrically embedded segment
// (its weight equals the shortest-path distance between its endpoints).
class GraphSpace final : public Space {
public:
    struct Edge {
        int u = 0, v = 0;
        double w = 0;
    };

    GraphSpace(int vertex_count, std::vector<Edge> edges, GraphKind kind = GraphKind::General,
               double declared_delta = 0.0, std::string name = "graph");

    int vertex_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    GraphKind kind() const { return kind_; }
    bool is_tree() const { return kind_ == GraphKind::Tree; }

    double vertex_distance(int u, int v) const;
    double edge_weight(int u, int v) const;  // throws if no such edge

    Point vertex_point(int v) const;
    // Canonicalizes: accepts either orientation of (u, v); endpoint offsets
    // snap to the vertex form.
    Point point_on_edge(int u, int v, double offset) const;

    // Space interface
    SpaceId id() const override { return id_; }
    std::string name() const override { return name_; }
    double distance(const Point& a, const Point& b) const override;
    GeodesicPath geodesic(const Point& a, const Point& b) const override;
    Point random_point(Rng& rng) const override;
    double declared_delta() const override { return declared_delta_; }
    double diameter_hint() const override { return diameter_hint_; }
    nlohmann::json to_json() const override;

private:
    struct Anchor {
        int vertex;
        double cost;
    };

    std::optional<double> same_edge_key(const Point& a, const Point& b) const;
    int anchors(const Point& p, Anchor out[2]) const;
    std::vector<int> lex_shortest_vertex_path(int u, int v) const;

    int n_ = 0;
    std::vector<Edge> edges_;
    GraphKind kind_;
    double declared_delta_ = 0;
    std::string name_;
    SpaceId id_ = 0;
    std::vector<double> dist_;                        // n x n shortest paths
    std::vector<std::vector<std::pair<int, double>>> adj_;  // (neighbor, weight)
    std::unordered_map<std::int64_t, double> edge_w_; // key u * n + v, u < v
    double total_edge_length_ = 0;
    double diameter_hint_ = 0;
};

}  // namespace hypflow
