#include <doctest.h>

#include <cmath>

#include "hypflow/builders.hpp"
#include "hypflow/metric_ops.hpp"

using namespace hypflow;

namespace {

const double kLn2 = 0.6931471805599453;

}  // namespace

TEST_CASE("graph distance: tripod leaf pairs and identity") {
    auto tri = build_tripod(2, 3, 4);
    const Point l2 = tri->vertex_point(1), l3 = tri->vertex_point(2), l4 = tri->vertex_point(3);
    CHECK(tri->distance(l3, l4) == doctest::Approx(7).epsilon(1e-12));
    CHECK(tri->distance(l2, l3) == doctest::Approx(5).epsilon(1e-12));
    CHECK(tri->distance(l2, l2) == 0.0);
    const Point mid = tri->point_on_edge(0, 3, 1.5);
    CHECK(tri->distance(mid, mid) == 0.0);
    CHECK(tri->distance(mid, l4) == doctest::Approx(2.5));
    CHECK(tri->distance(mid, l2) == doctest::Approx(3.5));
}

TEST_CASE("graph distance: host and range errors") {
    auto tri = build_tripod(2, 3, 4);
    auto other = build_tripod(1, 1, 1);
    CHECK_THROWS_AS(tri->distance(tri->vertex_point(0), other->vertex_point(0)), Error);
    CHECK_THROWS_AS(tri->point_on_edge(0, 1, 2.5), Error);
    CHECK_THROWS_AS(tri->point_on_edge(0, 1, -0.1), Error);
    CHECK_THROWS_AS(tri->point_on_edge(1, 2, 0.5), Error);  // no such edge
}

TEST_CASE("point canonicalization: edge endpoints are vertex points") {
    auto tri = build_tripod(2, 3, 4);
    CHECK(tri->point_on_edge(0, 1, 0.0) == tri->vertex_point(0));
    CHECK(tri->point_on_edge(0, 1, 2.0) == tri->vertex_point(1));
    // either orientation yields the canonical representation
    CHECK(tri->point_on_edge(1, 0, 0.5) == tri->point_on_edge(0, 1, 1.5));
}

TEST_CASE("half-plane distance closed forms") {
    auto hp = build_half_plane();
    CHECK(hp->distance(hp->point(0, 1), hp->point(0, 2)) ==
          doctest::Approx(kLn2).epsilon(1e-12));
    CHECK(hp->distance(hp->point(0, 1), hp->point(0, std::exp(1.0))) ==
          doctest::Approx(1).epsilon(1e-12));
    CHECK(hp->distance(hp->point(-1, 1), hp->point(1, 1)) ==
          doctest::Approx(std::acosh(3.0)).epsilon(1e-12));
    CHECK(hp->distance(hp->point(2, 5), hp->point(2, 5)) == 0.0);
    CHECK_THROWS_AS(hp->point(0, 0), Error);
    CHECK_THROWS_AS(hp->point(0, -1), Error);
}

TEST_CASE("geodesic: tree path through the branch vertex") {
    auto tri = build_tripod(2, 3, 4);
    const GeodesicPath g = tri->geodesic(tri->vertex_point(2), tri->vertex_point(3));
    CHECK(g.length() == doctest::Approx(7));
    const Point half = g.sample(0.5);
    CHECK(tri->distance(g.start(), half) == doctest::Approx(3.5));
    CHECK(tri->distance(half, g.end()) == doctest::Approx(3.5));
    CHECK(tri->distance(g.sample(3.0 / 7.0), tri->vertex_point(0)) ==
          doctest::Approx(0).epsilon(1e-9));
}

TEST_CASE("geodesic: half-plane arc midpoint is (0, sqrt 2)") {
    auto hp = build_half_plane();
    const GeodesicPath g = hp->geodesic(hp->point(-1, 1), hp->point(1, 1));
    const Point mid = g.sample(0.5);
    CHECK(mid.plane().u == doctest::Approx(0).epsilon(1e-9));
    CHECK(mid.plane().v == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("geodesic: degenerate path has length zero") {
    auto tri = build_tripod(2, 3, 4);
    const Point a = tri->point_on_edge(0, 2, 1.25);
    const GeodesicPath g = tri->geodesic(a, a);
    CHECK(g.length() == 0.0);
    CHECK(g.sample(0.7) == a);
}

TEST_CASE("geodesic: lexicographic tie-break on the unit 4-cycle") {
    auto c4 = build_cycle(4, 1);
    const GeodesicPath g = c4->geodesic(c4->vertex_point(0), c4->vertex_point(2));
    CHECK(g.length() == doctest::Approx(2));
    // ties broken toward the smallest vertex sequence: via v1, not v3
    CHECK(c4->distance(g.sample(0.5), c4->vertex_point(1)) == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("geodesic constant-speed invariant on a 17-point grid") {
    auto tri = build_tripod(2, 3, 4);
    auto hp = build_half_plane();
    Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        const GeodesicPath gt = tri->geodesic(tri->random_point(rng), tri->random_point(rng));
        const GeodesicPath gh = hp->geodesic(hp->random_point(rng), hp->random_point(rng));
        for (int i = 0; i <= 16; ++i) {
            for (int j = 0; j <= 16; ++j) {
                const double s = i / 16.0, t = j / 16.0;
                CHECK(std::abs(tri->distance(gt.sample(s), gt.sample(t)) -
                               std::abs(s - t) * gt.length()) <= 1e-9 * (1 + gt.length()));
                CHECK(std::abs(hp->distance(gh.sample(s), gh.sample(t)) -
                               std::abs(s - t) * gh.length()) <= 1e-9 * (1 + gh.length()));
            }
        }
    }
}

TEST_CASE("gromov product: tripod reaches the branch point") {
    auto tri = build_tripod(2, 3, 4);
    const Point base = tri->vertex_point(1);  // leaf of arm 2
    CHECK(gromov_product(*tri, base, tri->vertex_point(2), tri->vertex_point(3)) ==
          doctest::Approx(2).epsilon(1e-12));
    // (y|y)_base = d(base, y)
    const Point y = tri->point_on_edge(0, 3, 2.5);
    CHECK(gromov_product(*tri, base, y, y) == doctest::Approx(tri->distance(base, y)));
}

TEST_CASE("gromov product: opposite corners of the 4-cycle") {
    auto c4 = build_cycle(4, 1);
    CHECK(gromov_product(*c4, c4->vertex_point(0), c4->vertex_point(1), c4->vertex_point(3)) ==
          doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("gromov product bounds (triangle inequality consequences)") {
    auto tri = build_tripod(2, 3, 4);
    auto hp = build_half_plane();
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        for (const Space* sp : {static_cast<const Space*>(tri.get()),
                                static_cast<const Space*>(hp.get())}) {
            const Point b = sp->random_point(rng), x = sp->random_point(rng),
                        y = sp->random_point(rng);
            const double prod = gromov_product(*sp, b, x, y);
            CHECK(prod >= -1e-9);
            CHECK(prod <= std::min(sp->distance(b, x), sp->distance(b, y)) + 1e-9);
            // triangle inequality
            CHECK(sp->distance(x, y) <=
                  sp->distance(x, b) + sp->distance(b, y) + 1e-9);
        }
    }
}

TEST_CASE("four-point delta: trees are exactly 0, the unit 4-cycle is exactly 1") {
    auto tri = build_tripod(2, 3, 4);
    std::vector<Point> pts;
    for (int v = 0; v < 4; ++v) pts.push_back(tri->vertex_point(v));
    const DeltaEstimate tree_est = four_point_delta_exact(*tri, pts);
    CHECK(tree_est.delta_hat == 0.0);

    auto c4 = build_cycle(4, 1);
    std::vector<Point> corners;
    for (int v = 0; v < 4; ++v) corners.push_back(c4->vertex_point(v));
    const DeltaEstimate cyc = four_point_delta_exact(*c4, corners);
    CHECK(cyc.delta_hat == 1.0);
    CHECK(cyc.replay(*c4) == 1.0);
    CHECK(cyc.sample_count == 24);
}

TEST_CASE("four-point delta: degenerate inputs") {
    auto tri = build_tripod(2, 3, 4);
    const Point v0 = tri->vertex_point(0), v1 = tri->vertex_point(1);
    std::vector<Point> dup{v0, v0, v1, v1, v0};
    CHECK(four_point_delta_exact(*tri, dup).delta_hat == 0.0);
    std::vector<Point> empty;
    CHECK_THROWS_AS(four_point_delta_exact(*tri, empty), Error);
}

TEST_CASE("four-point delta: sampled mode is deterministic per seed") {
    auto hp = build_half_plane();
    Rng rng(11);
    std::vector<Point> pts;
    for (int i = 0; i < 60; ++i) pts.push_back(hp->random_point(rng));
    const auto a = four_point_delta_sampled(*hp, pts, 123, 5000);
    const auto b = four_point_delta_sampled(*hp, pts, 123, 5000);
    CHECK(a.delta_hat == b.delta_hat);
    CHECK(a.witness[0] == b.witness[0]);
    CHECK(a.delta_hat >= 0.0);
    CHECK(a.replay(*hp) == doctest::Approx(a.delta_hat).epsilon(1e-12));
}

TEST_CASE("distance to geodesic: tripod slack zero against the Gromov product") {
    auto tri = build_tripod(2, 3, 4);
    const Point x = tri->vertex_point(1);
    const GeodesicPath g = tri->geodesic(tri->vertex_point(2), tri->vertex_point(3));
    const double dist = distance_to_geodesic(*tri, x, g);
    CHECK(dist == doctest::Approx(2).epsilon(1e-9));
    CHECK(dist - gromov_product(*tri, x, tri->vertex_point(2), tri->vertex_point(3)) ==
          doctest::Approx(0).epsilon(1e-8));
}

TEST_CASE("distance to geodesic: degenerate path") {
    auto tri = build_tripod(2, 3, 4);
    const Point x = tri->vertex_point(1), y = tri->point_on_edge(0, 3, 3.0);
    const GeodesicPath g = tri->geodesic(y, y);
    CHECK(distance_to_geodesic(*tri, x, g) == doctest::Approx(tri->distance(x, y)));
}

TEST_CASE("distance to geodesic: half-plane sandwich") {
    auto hp = build_half_plane();
    const Point x = hp->point(0, 2);
    const Point y = hp->point(-1, 1), z = hp->point(1, 1);
    const GeodesicPath g = hp->geodesic(y, z);
    const double dist = distance_to_geodesic(*hp, x, g);
    const double prod = gromov_product(*hp, x, y, z);
    CHECK(prod <= dist + 1e-9);
    // empirical delta over the instance covers the proof's quadruples
    std::vector<Point> cloud{x, y, z};
    for (int i = 1; i < 8; ++i) cloud.push_back(g.sample(i / 8.0));
    const double dhat = four_point_delta_exact(*hp, cloud).delta_hat;
    CHECK(dist - 2 * dhat <= prod + 1e-9);
}

TEST_CASE("tripod lemma on trees: points below the branch coincide") {
    auto tri = build_tripod(2, 3, 4);
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const Point x = tri->random_point(rng), y = tri->random_point(rng),
                    z = tri->random_point(rng);
        const double r = rng.uniform() * gromov_product(*tri, x, y, z);
        const auto rep = check_tripod_lemma(*tri, x, y, z, r, 0.0);
        REQUIRE(!rep.skipped());
        CHECK(rep.pass);
        CHECK(rep.lhs <= 1e-9);
    }
    // r = 0 trivially passes
    const auto rep0 = check_tripod_lemma(*tri, tri->vertex_point(1), tri->vertex_point(2),
                                         tri->vertex_point(3), 0.0, 0.0);
    CHECK(rep0.pass);
    CHECK(rep0.lhs == 0.0);
    // r beyond the product is a precondition error
    CHECK_THROWS_AS(check_tripod_lemma(*tri, tri->vertex_point(1), tri->vertex_point(2),
                                       tri->vertex_point(3), 3.0, 0.0),
                    Error);
}

TEST_CASE("projection lemma: identical placements and skipped preconditions") {
    auto tri = build_tripod(2, 3, 4);
    const Point p = tri->vertex_point(1), x1 = tri->vertex_point(2), x2 = tri->vertex_point(3);
    // y_i = x_i: difference is exactly zero
    const auto eq = check_projection_lemma(*tri, p, x1, x2, x1, x2, 0.0, 0.0);
    REQUIRE(!eq.skipped());
    CHECK(eq.pass);
    CHECK(eq.lhs == doctest::Approx(0).epsilon(1e-12));

    // y_i past the branch point with sigma = 0: products equal
    const GeodesicPath g1 = tri->geodesic(p, x1), g2 = tri->geodesic(p, x2);
    const Point y1 = g1.sample(0.9), y2 = g2.sample(0.9);
    const auto rep = check_projection_lemma(*tri, p, x1, x2, y1, y2, 0.0, 0.0);
    REQUIRE(!rep.skipped());
    CHECK(rep.pass);
    CHECK(rep.lhs == doctest::Approx(0).epsilon(1e-9));

    // placement violating the depth precondition is skipped, not failed
    const Point shallow = g1.sample(0.05);
    const auto skip = check_projection_lemma(*tri, p, x1, x2, shallow, y2, 0.0, 0.0);
    CHECK(skip.skipped());

    // a point off the geodesic is skipped as well
    const auto off = check_projection_lemma(*tri, p, x1, x2, tri->vertex_point(0), y2, 5.0, 0.0);
    CHECK(!off.skipped());  // the center is on the geodesic p -> x1
    const auto off2 =
        check_projection_lemma(*tri, p, x1, x2, tri->point_on_edge(0, 3, 3.9), y2, 5.0, 0.0);
    CHECK(off2.skipped());
}
