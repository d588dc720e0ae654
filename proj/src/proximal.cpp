#include "hypflow/proximal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "hypflow/graph_space.hpp"
#include "hypflow/half_plane.hpp"
#include "hypflow/minimize.hpp"

namespace hypflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
    Point p;
    double moreau = kInf;
};

void consider(Candidate& best, const Point& p, double v) {
    if (v < best.moreau || (v == best.moreau && point_less(p, best.p))) {
        best = {p, v};
    }
}

// Search of the Moreau objective over every edge meeting the ball
// B(x, radius): coarse grid per edge (plus the kink of d(x, .) on that
// edge), golden-section refinement around each grid-local minimum.
Candidate graph_search(const GraphSpace& g, const std::function<double(const Point&)>& moreau,
                       const Point& x, double radius, double grid_step, double xtol) {
    Candidate best;
    consider(best, x, moreau(x));

    std::vector<double> dvert(static_cast<size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v)
        dvert[static_cast<size_t>(v)] = g.distance(x, g.vertex_point(v));

    for (const auto& e : g.edges()) {
        const double du = dvert[static_cast<size_t>(e.u)], dv = dvert[static_cast<size_t>(e.v)];
        const bool same_edge = x.is_edge() && x.edge().u == e.u && x.edge().v == e.v;
        if (std::min(du, dv) > radius && !same_edge) continue;

        auto on_edge = [&](double o) { return moreau(g.point_on_edge(e.u, e.v, o)); };

        std::vector<double> offsets;
        const int cells = std::max(
            8, static_cast<int>(std::min(4096.0, std::ceil(e.w / std::max(grid_step, 1e-12)))));
        offsets.reserve(static_cast<size_t>(cells) + 4);
        for (int i = 0; i <= cells; ++i) offsets.push_back(e.w * i / cells);
        const double kink = 0.5 * (dv - du + e.w);  // switch point of d(x, .) on the edge
        if (kink > 0 && kink < e.w) offsets.push_back(kink);
        if (same_edge) offsets.push_back(x.edge().offset);
        std::sort(offsets.begin(), offsets.end());

        std::vector<double> vals(offsets.size());
        for (size_t i = 0; i < offsets.size(); ++i) vals[i] = on_edge(offsets[i]);

        for (size_t i = 0; i < offsets.size(); ++i) {
            const bool left_ok = (i == 0) || vals[i] <= vals[i - 1];
            const bool right_ok = (i + 1 == offsets.size()) || vals[i] <= vals[i + 1];
            if (!(left_ok && right_ok)) continue;
            const double lo = i == 0 ? offsets[0] : offsets[i - 1];
            const double hi = i + 1 == offsets.size() ? offsets.back() : offsets[i + 1];
            if (hi - lo < 1e-15) {
                consider(best, g.point_on_edge(e.u, e.v, offsets[i]), vals[i]);
                continue;
            }
            auto [o, v] = golden_min(on_edge, lo, hi, xtol);
            if (vals[i] < v) {
                o = offsets[i];
                v = vals[i];
            }
            consider(best, g.point_on_edge(e.u, e.v, o), v);
        }
    }
    return best;
}

Candidate hp_compass(const HalfPlaneSpace& hp, const std::function<double(const Point&)>& moreau,
                     const Point& start, double v0, double h0, double xtol) {
    double u = start.plane().u, lv = std::log(start.plane().v);
    double cur = v0;
    double h = h0;
    while (h > xtol) {
        bool improved = false;
        const double du[4] = {h, -h, 0, 0};
        const double dl[4] = {0, 0, h, -h};
        for (int k = 0; k < 4; ++k) {
            const double nu = u + du[k] * std::exp(lv);
            const double nl = lv + dl[k];
            const double v = moreau(hp.point(nu, std::exp(nl)));
            if (v < cur) {
                cur = v;
                u = nu;
                lv = nl;
                improved = true;
            }
        }
        if (!improved) h *= 0.5;
    }
    return {hp.point(u, std::exp(lv)), cur};
}

Candidate hp_search(const HalfPlaneSpace& hp, const std::function<double(const Point&)>& moreau,
                    const Point& x, const Point& minimizer, double radius, double xtol) {
    Candidate best;
    consider(best, x, moreau(x));

    constexpr int kRadial = 12, kAngular = 24;
    for (int i = 1; i <= kRadial; ++i) {
        const double rho = radius * i / kRadial;
        for (int k = 0; k < kAngular; ++k) {
            const double alpha = 2.0 * M_PI * k / kAngular;
            const Point q = hp.exp_map(x, alpha, rho);
            consider(best, q, moreau(q));
        }
    }
    // the optimum of our objective family lies toward the minimizer
    const double dxp = hp.distance(x, minimizer);
    if (dxp > 0) {
        const GeodesicPath gxp = hp.geodesic(x, minimizer);
        for (int i = 0; i <= 16; ++i) {
            const double rho = std::min(radius, dxp) * i / 16.0;
            const Point q = gxp.sample(rho / dxp);
            consider(best, q, moreau(q));
        }
    }
    const Candidate refined =
        hp_compass(hp, moreau, best.p, best.moreau, std::max(radius / 8.0, 1e-3), xtol);
    consider(best, refined.p, refined.moreau);
    return best;
}

}  // namespace

ProxResult prox(const Space& space, const Objective& f, const Point& x, double tau,
                const ProxConfig& config) {
    if (!(tau > 0)) throw Error("prox: tau must be positive");
    space.require_host(x, "prox");

    const double fx = f(x);
    const double refine_tol = config.refine_tol_scale * (1.0 + std::abs(fx));
    const double L = f.L();
    const double radius = 2.0 * tau * L * (1.0 + 1e-9) + 1e-12;
    const double grid_step = std::min(config.grid_step, 0.5 * tau * L);

    auto moreau = [&](const Point& q) {
        const double d = space.distance(x, q);
        return f(q) + d * d / (2.0 * tau);
    };

    const auto* graph = dynamic_cast<const GraphSpace*>(&space);
    const auto* hp = dynamic_cast<const HalfPlaneSpace*>(&space);
    if (!graph && !hp) throw Error("prox: unsupported space type");

    auto search = [&]() {
        return graph ? graph_search(*graph, moreau, x, radius, grid_step, config.refine_xtol)
                     : hp_search(*hp, moreau, x, f.minimizer(), radius, config.refine_xtol);
    };
    auto refine_near = [&](const Point& q, double v) -> Candidate {
        if (graph) {
            if (!q.is_edge()) return {q, v};
            const auto& e = q.edge();
            const double w = graph->edge_weight(e.u, e.v);
            auto on_edge = [&](double o) { return moreau(graph->point_on_edge(e.u, e.v, o)); };
            const double lo = std::max(0.0, e.offset - grid_step);
            const double hi = std::min(w, e.offset + grid_step);
            auto [o, val] = golden_min(on_edge, lo, hi, config.refine_xtol);
            return val < v ? Candidate{graph->point_on_edge(e.u, e.v, o), val} : Candidate{q, v};
        }
        return hp_compass(*hp, moreau, q, v, grid_step, config.refine_xtol);
    };

    Candidate best = search();
    consider(best, f.minimizer(), moreau(f.minimizer()));

    Rng rng(config.probe_seed ^ space.id());
    double certificate = 0;
    for (int round = 0; round < 4; ++round) {
        certificate = 0;
        Candidate beater;
        auto probe = [&](const Point& z) {
            const double v = moreau(z);
            certificate = std::max(certificate, best.moreau - v);
            if (v < beater.moreau) beater = {z, v};
        };
        probe(x);
        probe(f.minimizer());
        for (int i = 0; i < config.certificate_samples; ++i) {
            // mostly inside the search ball, some unrestricted probes to
            // confirm the 2*tau*L radius is sound
            Point z = space.random_point(rng);
            if (i % 5 != 0) {
                const double d = space.distance(x, z);
                if (d > radius && d > 0)
                    z = space.geodesic(x, z).sample(std::min(1.0, radius / d));
            }
            probe(z);
        }
        if (certificate <= refine_tol) break;
        Candidate improved = refine_near(beater.p, beater.moreau);
        consider(best, improved.p, improved.moreau);
        consider(best, beater.p, beater.moreau);
        if (round == 3) {
            ProxResult bad;
            bad.y = best.p;
            bad.moreau_value = best.moreau;
            bad.displacement = space.distance(x, best.p);
            bad.certificate = certificate;
            bad.f_y = f(best.p);
            bad.tau = tau;
            throw ProxError("prox: certificate failure after refinement budget", bad);
        }
    }

    ProxResult res;
    res.y = best.p;
    res.moreau_value = best.moreau;
    res.displacement = space.distance(x, best.p);
    res.certificate = certificate;
    res.f_y = f(best.p);
    res.tau = tau;

    // search-radius soundness and the d(x,y) <= d(p,x) bound implied by
    // comparing against the probes x and p
    const double slack = std::sqrt(2.0 * tau * (certificate + refine_tol));
    if (res.displacement > 2.0 * tau * L + slack + kTolGeo)
        throw ProxError("prox: displacement exceeds the 2*tau*L search radius", res);
    if (res.f_y >= f.min_value()) {
        const double dpx = space.distance(f.minimizer(), x);
        if (res.displacement * res.displacement >
            dpx * dpx + 2.0 * tau * (certificate + refine_tol) + kTolGeo)
            throw ProxError("prox: displacement exceeds d(p,x)", res);
    }
    return res;
}

double PwlConvex::eval(double x) const {
    if (s.size() < 2 || s.size() != f.size()) throw Error("PwlConvex: malformed table");
    if (x < s.front() - 1e-12 || x > s.back() + 1e-12) throw Error("PwlConvex: out of range");
    x = std::clamp(x, s.front(), s.back());
    size_t lo = 0, hi = s.size() - 1;
    while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        if (s[mid] <= x) lo = mid; else hi = mid;
    }
    const double t = (x - s[lo]) / (s[lo + 1] - s[lo]);
    return f[lo] + t * (f[lo + 1] - f[lo]);
}

void PwlConvex::validate() const {
    if (s.size() < 2 || s.size() != f.size()) throw Error("PwlConvex: malformed table");
    if (s.front() != 0.0) throw Error("PwlConvex: table must start at 0");
    double prev_slope = -kInf;
    for (size_t i = 0; i + 1 < s.size(); ++i) {
        if (!(s[i + 1] > s[i])) throw Error("PwlConvex: breakpoints must increase");
        const double slope = (f[i + 1] - f[i]) / (s[i + 1] - s[i]);
        if (slope < prev_slope - 1e-12 * (1.0 + std::abs(prev_slope)))
            throw Error("PwlConvex: non-convex table");
        prev_slope = std::max(prev_slope, slope);
    }
    const double first_slope = (f[1] - f[0]) / (s[1] - s[0]);
    if (first_slope < -1e-12) throw Error("PwlConvex: minimum not attained at 0");
}

double prox_1d(const PwlConvex& table, double t, double tau) {
    table.validate();
    if (!(tau > 0)) throw Error("prox_1d: tau must be positive");
    if (t < 0 || t > table.T() + 1e-12) throw Error("prox_1d: t outside [0, T]");
    if (t <= 0) return 0.0;

    // g(s) = f(s) + (t-s)^2/(2 tau) is strictly convex; find the piece whose
    // stationary point s* = t - tau * slope it contains, walking left to
    // right (the subgradient of g is increasing).
    for (size_t i = 0; i + 1 < table.s.size(); ++i) {
        const double slope = (table.f[i + 1] - table.f[i]) / (table.s[i + 1] - table.s[i]);
        const double star = t - tau * slope;
        if (star < table.s[i]) return std::max(0.0, table.s[i]);
        if (star <= table.s[i + 1]) return std::min(star, table.T());
    }
    return std::min(t, table.T());
}

FlowTrace flow(const Space& space, const Objective& f, const Point& x0, double tau,
               double epsilon, int max_iter, const ProxConfig& config) {
    if (!(epsilon > 0)) throw Error("flow: epsilon must be positive");
    if (max_iter < 0) throw Error("flow: max_iter must be nonnegative");
    space.require_host(x0, "flow");

    const Point& p = f.minimizer();
    const double K = f.K(), L = f.L();
    const bool ball_applicable = K > 0 && tau > 1.0 / K;
    const double delta = space.declared_delta();
    const double ball_rhs =
        ball_applicable ? (2.0 * L * tau / (K * tau - 1.0)) *
                              (4.0 * std::sqrt(2.0 * tau * L * delta) / std::sqrt(K * tau + 1.0) +
                               epsilon * epsilon)
                        : kInf;
    const double stationary_tol = 1e-8 * (1.0 + 2.0 * tau * L);

    FlowTrace trace;
    trace.tau = tau;
    trace.epsilon = epsilon;
    Point x = x0;
    double dpx = space.distance(p, x);
    trace.iterates.push_back({x, f(x), dpx, 0.0, f(x)});

    for (int step = 1;; ++step) {
        if (ball_applicable && dpx * dpx <= ball_rhs) {
            trace.stop_reason = "ball_reached";
            break;
        }
        if (step > max_iter) {
            trace.stop_reason = "budget";
            break;
        }
        const ProxResult r = prox(space, f, x, tau, config);
        if (r.displacement <= stationary_tol) {
            trace.stop_reason = "stationary";
            break;
        }
        const double dpy = space.distance(p, r.y);
        const double decrease = dpx - dpy;
        trace.iterates.push_back({r.y, r.f_y, dpy, r.displacement, r.moreau_value});
        x = r.y;
        dpx = dpy;
        if (decrease < epsilon * epsilon - 1e-10) {
            trace.stop_reason = "unproductive";
            break;
        }
    }
    return trace;
}

std::string flow_trace_to_csv(const FlowTrace& trace) {
    std::ostringstream out;
    out << "iter,f_value,dist_to_p,displacement,moreau_value\n";
    char buf[256];
    for (size_t i = 0; i < trace.iterates.size(); ++i) {
        const auto& it = trace.iterates[i];
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g\n", i, it.f_value,
                      it.dist_to_p, it.displacement, it.moreau_value);
        out << buf;
    }
    return out.str();
}

}  // namespace hypflow
