#include "hypflow/graph_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>

namespace hypflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t edge_key(int u, int v, int n) {
    if (u > v) std::swap(u, v);
    return static_cast<std::int64_t>(u) * n + v;
}

const char* kind_name(GraphKind k) {
    switch (k) {
        case GraphKind::Tree: return "tree";
        case GraphKind::PerturbedTree: return "perturbed";
        default: return "general";
    }
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace

GraphSpace::GraphSpace(int vertex_count, std::vector<Edge> edges, GraphKind kind,
                       double declared_delta, std::string name)
    : n_(vertex_count), edges_(std::move(edges)), kind_(kind),
      declared_delta_(declared_delta), name_(std::move(name)) {
    if (n_ < 1) throw Error("GraphSpace: need at least one vertex");
    if (declared_delta_ < 0) throw Error("GraphSpace: negative declared delta");

    adj_.assign(n_, {});
    for (auto& e : edges_) {
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw Error("GraphSpace: edge endpoint out of range");
        if (e.u == e.v) throw Error("GraphSpace: self-loop");
        if (!(e.w > 0)) throw Error("GraphSpace: nonpositive edge weight");
        if (e.u > e.v) std::swap(e.u, e.v);
        if (!edge_w_.emplace(edge_key(e.u, e.v, n_), e.w).second)
            throw Error("GraphSpace: parallel edge");
        adj_[e.u].push_back({e.v, e.w});
        adj_[e.v].push_back({e.u, e.w});
        total_edge_length_ += e.w;
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());

    // all-pairs shortest paths, one Dijkstra per source
    dist_.assign(static_cast<size_t>(n_) * n_, kInf);
    for (int s = 0; s < n_; ++s) {
        double* d = &dist_[static_cast<size_t>(s) * n_];
        d[s] = 0;
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        pq.push({0.0, s});
        while (!pq.empty()) {
            auto [dc, c] = pq.top();
            pq.pop();
            if (dc > d[c]) continue;
            for (auto [nb, w] : adj_[c]) {
                if (dc + w < d[nb]) {
                    d[nb] = dc + w;
                    pq.push({d[nb], nb});
                }
            }
        }
    }

    double max_d = 0, max_w = 0;
    for (double d : dist_) {
        if (d == kInf) throw Error("GraphSpace: graph is not connected");
        max_d = std::max(max_d, d);
    }
    for (const auto& e : edges_) {
        max_w = std::max(max_w, e.w);
        // every edge must be an isometrically embedded segment
        if (vertex_distance(e.u, e.v) < e.w - 1e-12 * (1.0 + e.w))
            throw Error("GraphSpace: edge dominated by a shorter path");
    }
    diameter_hint_ = max_d + max_w;

    if (kind_ == GraphKind::Tree && static_cast<int>(edges_.size()) != n_ - 1)
        throw Error("GraphSpace: tree kind requires an acyclic connected graph");

    std::string desc = std::string("graph|") + kind_name(kind_);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "|%d|%.17g", n_, declared_delta_);
    desc += buf;
    for (const auto& e : edges_) {
        std::snprintf(buf, sizeof(buf), ";%d,%d,%.17g", e.u, e.v, e.w);
        desc += buf;
    }
    id_ = fnv1a(desc);
}

double GraphSpace::vertex_distance(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) throw Error("vertex_distance: vertex out of range");
    return dist_[static_cast<size_t>(u) * n_ + v];
}

double GraphSpace::edge_weight(int u, int v) const {
    auto it = edge_w_.find(edge_key(u, v, n_));
    if (it == edge_w_.end()) throw Error("edge_weight: no such edge");
    return it->second;
}

Point GraphSpace::vertex_point(int v) const {
    if (v < 0 || v >= n_) throw Error("vertex_point: vertex out of range");
    Point p;
    p.host = id_;
    p.loc = VertexLoc{v};
    return p;
}

Point GraphSpace::point_on_edge(int u, int v, double offset) const {
    double w = edge_weight(u, v);
    if (u > v) {
        std::swap(u, v);
        offset = w - offset;
    }
    const double snap = 1e-12 * (1.0 + w);
    if (offset < -snap || offset > w + snap)
        throw Error("point_on_edge: offset outside the edge range");
    Point p;
    p.host = id_;
    if (offset <= snap) {
        p.loc = VertexLoc{u};
    } else if (offset >= w - snap) {
        p.loc = VertexLoc{v};
    } else {
        p.loc = EdgeLoc{u, v, offset};
    }
    return p;
}

std::optional<double> GraphSpace::same_edge_key(const Point& a, const Point& b) const {
    if (!a.is_edge() || !b.is_edge()) return std::nullopt;
    if (a.edge().u != b.edge().u || a.edge().v != b.edge().v) return std::nullopt;
    return std::abs(a.edge().offset - b.edge().offset);
}

int GraphSpace::anchors(const Point& p, Anchor out[2]) const {
    if (p.is_vertex()) {
        out[0] = {p.vertex().v, 0.0};
        return 1;
    }
    if (!p.is_edge()) throw Error("GraphSpace: point is not a graph point");
    const auto& e = p.edge();
    const double w = edge_weight(e.u, e.v);
    if (e.offset < 0 || e.offset > w) throw Error("GraphSpace: point outside its edge range");
    out[0] = {e.u, e.offset};
    out[1] = {e.v, w - e.offset};
    return 2;
}

double GraphSpace::distance(const Point& a, const Point& b) const {
    require_host(a, "distance");
    require_host(b, "distance");
    if (a == b) return 0.0;
    double best = kInf;
    if (auto direct = same_edge_key(a, b)) best = *direct;
    Anchor aa[2], bb[2];
    const int na = anchors(a, aa), nb = anchors(b, bb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            best = std::min(best, aa[i].cost + vertex_distance(aa[i].vertex, bb[j].vertex) +
                                      bb[j].cost);
    return best;
}

std::vector<int> GraphSpace::lex_shortest_vertex_path(int u, int v) const {
    std::vector<int> path{u};
    const double target = vertex_distance(u, v);
    const double eps = 1e-12 * (1.0 + target);
    double acc = 0;
    int cur = u;
    int guard = 0;
    while (cur != v) {
        if (++guard > n_ + 1) throw Error("lex path reconstruction failed");
        int next = -1;
        double next_w = 0;
        for (auto [nb, w] : adj_[cur]) {  // neighbors sorted ascending
            if (std::abs(acc + w + vertex_distance(nb, v) - target) <= eps) {
                next = nb;
                next_w = w;
                break;
            }
        }
        if (next < 0) throw Error("lex path reconstruction failed");
        acc += next_w;
        path.push_back(next);
        cur = next;
    }
    return path;
}

GeodesicPath GraphSpace::geodesic(const Point& a, const Point& b) const {
    require_host(a, "geodesic");
    require_host(b, "geodesic");
    if (a == b) return GeodesicPath(a, b, 0.0, GeodesicPath::GraphPayload{});

    struct Candidate {
        double length = kInf;
        std::vector<int> seq;     // vertex sequence; empty = same-edge direct
        bool direct = false;
    };
    std::vector<Candidate> cands;

    if (auto direct = same_edge_key(a, b)) {
        Candidate c;
        c.length = *direct;
        c.direct = true;
        cands.push_back(std::move(c));
    }
    Anchor aa[2], bb[2];
    const int na = anchors(a, aa), nb = anchors(b, bb);
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j) {
            Candidate c;
            c.length = aa[i].cost + vertex_distance(aa[i].vertex, bb[j].vertex) + bb[j].cost;
            c.seq = lex_shortest_vertex_path(aa[i].vertex, bb[j].vertex);
            cands.push_back(std::move(c));
        }
    }
    const Candidate* best = &cands[0];
    for (const auto& c : cands) {
        if (c.length < best->length ||
            (c.length == best->length && std::lexicographical_compare(
                                             c.seq.begin(), c.seq.end(), best->seq.begin(),
                                             best->seq.end())))
            best = &c;
    }

    std::vector<GeodesicPath::GraphSeg> segs;
    auto push_seg = [&](int u, int v, double o0, double o1, double w) {
        if (o0 == o1) return;
        GeodesicPath::GraphSeg s;
        s.u = u; s.v = v; s.o0 = o0; s.o1 = o1; s.edge_w = w;
        s.s0 = segs.empty() ? 0.0 : segs.back().s0 + std::abs(segs.back().o1 - segs.back().o0);
        segs.push_back(s);
    };

    if (best->direct) {
        const auto& ea = a.edge();
        push_seg(ea.u, ea.v, ea.offset, b.edge().offset, edge_weight(ea.u, ea.v));
    } else {
        const auto& seq = best->seq;
        if (a.is_edge()) {
            const auto& e = a.edge();
            const double w = edge_weight(e.u, e.v);
            push_seg(e.u, e.v, e.offset, seq.front() == e.u ? 0.0 : w, w);
        }
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
            int u = seq[i], v = seq[i + 1];
            const double w = edge_weight(u, v);
            if (u < v) push_seg(u, v, 0.0, w, w);
            else push_seg(v, u, w, 0.0, w);
        }
        if (b.is_edge()) {
            const auto& e = b.edge();
            const double w = edge_weight(e.u, e.v);
            push_seg(e.u, e.v, seq.back() == e.u ? 0.0 : w, e.offset, w);
        }
    }

    double total = 0;
    for (const auto& s : segs) total += std::abs(s.o1 - s.o0);
    if (std::abs(total - best->length) > 1e-9 * (1.0 + total))
        throw Error("geodesic: segment assembly does not match path length");
    return GeodesicPath(a, b, best->length, GeodesicPath::GraphPayload{std::move(segs)});
}

Point GraphSpace::random_point(Rng& rng) const {
    if (edges_.empty()) return vertex_point(0);
    double pick = rng.uniform() * total_edge_length_;
    for (const auto& e : edges_) {
        if (pick <= e.w) return point_on_edge(e.u, e.v, std::clamp(pick, 0.0, e.w));
        pick -= e.w;
    }
    const auto& e = edges_.back();
    return point_on_edge(e.u, e.v, e.w);
}

nlohmann::json GraphSpace::to_json() const {
    nlohmann::json j;
    j["format"] = 1;
    j["type"] = "graph";
    j["kind"] = kind_name(kind_);
    j["declared_delta"] = declared_delta_;
    auto verts = nlohmann::json::array();
    for (int v = 0; v < n_; ++v) verts.push_back(v);
    j["vertices"] = std::move(verts);
    auto edges = nlohmann::json::array();
    for (const auto& e : edges_) edges.push_back({e.u, e.v, e.w});
    j["edges"] = std::move(edges);
    return j;
}

}  // namespace hypflow
