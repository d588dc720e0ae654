#include "hypflow/metric_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypflow/minimize.hpp"

namespace hypflow {

double gromov_product(const Space& space, const Point& base, const Point& x, const Point& y) {
    space.require_host(base, "gromov_product");
    space.require_host(x, "gromov_product");
    space.require_host(y, "gromov_product");
    return 0.5 * (space.distance(base, x) + space.distance(base, y) - space.distance(x, y));
}

namespace {

// Deficiencies below the float-noise scale of the distances involved are
// measurement noise, not hyperbolicity defects; they clamp to zero so that
// exactly tree-like configurations report delta_hat = 0.
double noise_floor(double distance_scale) { return 1e-12 * (1.0 + distance_scale); }

double clamp_deficiency(double def, double distance_scale) {
    return def <= noise_floor(distance_scale) ? 0.0 : def;
}

}  // namespace

double DeltaEstimate::replay(const Space& space) const {
    const Point& p = witness[0];
    const Point& x = witness[1];
    const Point& y = witness[2];
    const Point& z = witness[3];
    const double xy = gromov_product(space, p, x, y);
    const double yz = gromov_product(space, p, y, z);
    const double xz = gromov_product(space, p, x, z);
    double scale = 0;
    for (const auto& a : witness)
        for (const auto& b : witness) scale = std::max(scale, space.distance(a, b));
    return clamp_deficiency(std::min(xy, yz) - xz, scale);
}

namespace {

struct QuadScan {
    const Space& space;
    std::vector<double> d;  // pairwise distances
    size_t n;
    double scale = 0;

    QuadScan(const Space& sp, std::span<const Point> pts) : space(sp), n(pts.size()) {
        d.assign(n * n, 0.0);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                d[i * n + j] = d[j * n + i] = space.distance(pts[i], pts[j]);
                scale = std::max(scale, d[i * n + j]);
            }
    }

    // deficiency of the ordered quadruple (p; x, y, z)
    double deficiency(size_t p, size_t x, size_t y, size_t z) const {
        const double xy = 0.5 * (d[p * n + x] + d[p * n + y] - d[x * n + y]);
        const double yz = 0.5 * (d[p * n + y] + d[p * n + z] - d[y * n + z]);
        const double xz = 0.5 * (d[p * n + x] + d[p * n + z] - d[x * n + z]);
        return std::min(xy, yz) - xz;
    }
};

}  // namespace

DeltaEstimate four_point_delta_exact(const Space& space, std::span<const Point> pts) {
    for (const auto& p : pts) space.require_host(p, "four_point_delta");
    DeltaEstimate est;
    if (pts.size() >= 1)
        est.witness = {pts[0], pts[0], pts[0], pts[0]};
    if (pts.size() < 4) {
        if (pts.empty()) throw Error("four_point_delta: exact mode needs at least 4 points");
        // fewer than 4 distinct points: only degenerate quadruples, deficiency 0
        est.delta_hat = 0;
        est.sample_count = 0;
        return est;
    }
    const QuadScan scan(space, pts);
    double best = 0;
    std::array<size_t, 4> w{0, 0, 0, 0};
    const size_t n = pts.size();
    long long count = 0;
    for (size_t p = 0; p < n; ++p)
        for (size_t x = 0; x < n; ++x) {
            if (x == p) continue;
            for (size_t y = 0; y < n; ++y) {
                if (y == p || y == x) continue;
                for (size_t z = 0; z < n; ++z) {
                    if (z == p || z == x || z == y) continue;
                    ++count;
                    const double def = scan.deficiency(p, x, y, z);
                    if (def > best) {
                        best = def;
                        w = {p, x, y, z};
                    }
                }
            }
        }
    est.delta_hat = clamp_deficiency(best, scan.scale);
    est.witness = {pts[w[0]], pts[w[1]], pts[w[2]], pts[w[3]]};
    est.sample_count = count;
    return est;
}

DeltaEstimate four_point_delta_sampled(const Space& space, std::span<const Point> pts,
                                       std::uint64_t seed, long long count) {
    for (const auto& p : pts) space.require_host(p, "four_point_delta");
    if (pts.empty()) throw Error("four_point_delta: empty point set");
    DeltaEstimate est;
    est.witness = {pts[0], pts[0], pts[0], pts[0]};
    est.sample_count = count;
    if (pts.size() < 4) return est;
    const QuadScan scan(space, pts);
    Rng rng(seed);
    const auto n = static_cast<std::int64_t>(pts.size());
    double best = -std::numeric_limits<double>::infinity();
    std::array<size_t, 4> w{0, 1, 2, 3};
    for (long long k = 0; k < count; ++k) {
        size_t q[4];
        for (int i = 0; i < 4; ++i) {
            bool fresh;
            do {
                q[i] = static_cast<size_t>(rng.uniform_int(0, n - 1));
                fresh = true;
                for (int j = 0; j < i; ++j) fresh &= (q[j] != q[i]);
            } while (!fresh);
        }
        const double def = scan.deficiency(q[0], q[1], q[2], q[3]);
        if (def > best) {
            best = def;
            w = {q[0], q[1], q[2], q[3]};
        }
    }
    est.delta_hat = std::max(0.0, best);
    est.witness = {pts[w[0]], pts[w[1]], pts[w[2]], pts[w[3]]};
    return est;
}

double distance_to_geodesic(const Space& space, const Point& x, const GeodesicPath& path,
                            int grid) {
    space.require_host(x, "distance_to_geodesic");
    if (path.host() != space.id())
        throw Error("distance_to_geodesic: path does not belong to this space");
    if (grid < 2) throw Error("distance_to_geodesic: grid must be >= 2");
    if (path.length() == 0) return space.distance(x, path.start());

    auto g = [&](double t) { return space.distance(x, path.sample(t)); };
    double best_t = 0, best = g(0);
    for (int i = 1; i < grid; ++i) {
        const double t = static_cast<double>(i) / (grid - 1);
        const double v = g(t);
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    const double step = 1.0 / (grid - 1);
    const double lo = std::max(0.0, best_t - step), hi = std::min(1.0, best_t + step);
    auto [t_ref, v_ref] = golden_min(g, lo, hi, 1e-10);
    (void)t_ref;
    return std::min(best, v_ref);
}

TheoremReport check_tripod_lemma(const Space& space, const Point& x, const Point& y,
                                 const Point& z, double r, double delta) {
    nlohmann::json inputs{{"space", space.name()},
                          {"r", r},
                          {"delta", delta}};
    if (r < 0) throw Error("check_tripod_lemma: r must be nonnegative");
    const double product = gromov_product(space, x, y, z);
    if (r > product + tol_check(product))
        throw Error("check_tripod_lemma: r exceeds the Gromov product");
    const GeodesicPath gxy = space.geodesic(x, y);
    const GeodesicPath gxz = space.geodesic(x, z);
    // r <= (y|z)_x <= min(d(x,y), d(x,z)), so the parameters stay in [0,1]
    const Point yp = gxy.sample(gxy.length() > 0 ? std::min(1.0, r / gxy.length()) : 0.0);
    const Point zp = gxz.sample(gxz.length() > 0 ? std::min(1.0, r / gxz.length()) : 0.0);
    auto rep = TheoremReport::make("tripod_lemma", space.distance(yp, zp), 4.0 * delta,
                                   std::move(inputs));
    rep.delta_check = delta;
    return rep;
}

TheoremReport check_projection_lemma(const Space& space, const Point& p, const Point& x1,
                                     const Point& x2, const Point& y1, const Point& y2,
                                     double sigma, double delta) {
    nlohmann::json inputs{{"space", space.name()}, {"sigma", sigma}, {"delta", delta}};
    if (sigma < 0) throw Error("check_projection_lemma: sigma must be nonnegative");
    const double product = gromov_product(space, p, x1, x2);
    const double dpy1 = space.distance(p, y1);
    const double dpy2 = space.distance(p, y2);

    // y_i must sit on a geodesic from p to x_i
    auto on_geodesic = [&](const Point& yi, const Point& xi, double dpyi) {
        const double gap = dpyi + space.distance(yi, xi) - space.distance(p, xi);
        return std::abs(gap) <= tol_check(space.distance(p, xi));
    };
    if (!on_geodesic(y1, x1, dpy1) || !on_geodesic(y2, x2, dpy2))
        return TheoremReport::make_skipped("projection_lemma",
                                           "y_i is not on the geodesic from p to x_i",
                                           std::move(inputs));
    if (std::min(dpy1, dpy2) < product - sigma - tol_check(product))
        return TheoremReport::make_skipped("projection_lemma",
                                           "min d(p,y_i) < (x1|x2)_p - sigma", std::move(inputs));

    const double lhs = std::abs(product - gromov_product(space, p, y1, y2));
    auto rep = TheoremReport::make("projection_lemma", lhs, 6.0 * delta + sigma,
                                   std::move(inputs));
    rep.delta_check = delta;
    return rep;
}

}  // namespace hypflow
