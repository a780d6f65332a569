#include <doctest.h>

#include <cmath>
#include <vector>

#include "liftexp/error.hpp"
#include "liftexp/lift.hpp"
#include "liftexp/polygon.hpp"
#include "test_util.hpp"

using namespace liftexp;
using testutil::close;
using testutil::Rng;

namespace {

BodySample two_interval_sample() {
    return BodySample({Interval{1.0, 3.0}, Interval{2.0, 4.0}}, std::vector<double>{0.5, 0.5});
}

void check_polygon_matches_lift(const BodySample& s, const Polygon2D& poly, double tol) {
    // sweep of the (u0, u) plane plus the edge-normal directions, where the
    // polygon support touches each edge exactly
    for (int k = 0; k < 360; ++k) {
        const double theta = 2.0 * M_PI * k / 360.0;
        const double u0 = std::cos(theta), u = std::sin(theta);
        CHECK(close(poly.support(u0, u), lift_support(s, u0, Vec{u}), tol));
    }
    const auto& v = poly.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2 a = v[i];
        const Point2 b = v[(i + 1) % v.size()];
        const double nx = b.y - a.y, ny = a.x - b.x;  // outward normal for ccw
        CHECK(close(poly.support(nx, ny), lift_support(s, nx, Vec{ny}), tol));
    }
}

}  // namespace

TEST_CASE("polygon_1d: deterministic interval") {
    const Polygon2D p = polygon_1d(BodySample::uniform({ConvexBody(Interval{0.0, 1.0})}));
    REQUIRE(p.size() == 3);
    CHECK(p.vertices()[0] == Point2{0.0, 0.0});
    CHECK(p.vertices()[1] == Point2{1.0, 0.0});
    CHECK(p.vertices()[2] == Point2{1.0, 1.0});
}

TEST_CASE("polygon_1d: the two-interval sample") {
    const Polygon2D p = polygon_1d(two_interval_sample());
    REQUIRE(p.size() == 5);
    CHECK(p.vertices()[0] == Point2{0.0, 0.0});
    CHECK(p.vertices()[1] == Point2{0.5, 0.5});
    CHECK(p.vertices()[2] == Point2{1.0, 1.5});
    CHECK(p.vertices()[3] == Point2{1.0, 3.5});
    CHECK(p.vertices()[4] == Point2{0.5, 2.0});
    check_polygon_matches_lift(two_interval_sample(), p, 1e-9);
}

TEST_CASE("polygon_1d: singleton sample is the lift zonoid polygon") {
    const BodySample s =
        BodySample::uniform({Singleton{{1.0}}, Singleton{{2.0}}, Singleton{{3.0}}});
    const Polygon2D p = polygon_1d(s);
    // lower and upper Lorenz curves of the same variable close at (1, mean)
    bool found_close = false;
    for (const Point2& v : p.vertices())
        if (v.x == 1.0 && v.y == 2.0) found_close = true;
    CHECK(found_close);
    check_polygon_matches_lift(s, p, 1e-9);
}

TEST_CASE("polygon_1d: degenerate singleton collapses to a segment") {
    const Polygon2D p = polygon_1d(BodySample::uniform({Singleton{{3.0}}}));
    CHECK(p.size() == 2);
    CHECK(p.area() == 0.0);
}

TEST_CASE("polygon_1d rejects non-interval bodies and matches lift on random samples") {
    CHECK_THROWS_AS(polygon_1d(BodySample::uniform({ConvexBody(Ball{{0.0}, 1.0})})),
                    ValidationError);
    CHECK_THROWS_AS(polygon_1d(BodySample::uniform({ConvexBody(Ball{{0.0, 0.0}, 1.0})})),
                    ValidationError);

    Rng rng(37);
    for (int rep = 0; rep < 50; ++rep) {
        const BodySample s = testutil::random_interval_sample(rng, 12);
        check_polygon_matches_lift(s, polygon_1d(s), 1e-9);
    }
}

TEST_CASE("gini area: exact cases and the double-sum oracle") {
    const BodySample s123 =
        BodySample::uniform({Singleton{{1.0}}, Singleton{{2.0}}, Singleton{{3.0}}});
    const GiniArea g = gini_area(s123);
    CHECK(g.area == 4.0 / 9.0);
    CHECK(g.gmd_upper == 8.0 / 9.0);

    CHECK(gini_area(BodySample::uniform({Singleton{{7.0}}})).area == 0.0);
    CHECK(gini_area(two_interval_sample()).area == 1.25);

    Rng rng(41);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + rng.index(10);
        std::vector<ConvexBody> bodies;
        std::vector<double> xs;
        for (std::size_t i = 0; i < n; ++i) {
            xs.push_back(rng.uniform(-5.0, 5.0));
            bodies.push_back(Singleton{{xs.back()}});
        }
        const std::vector<double> w = testutil::random_weights(rng, n);
        const BodySample s(std::move(bodies), std::vector<double>(w));
        double gmd = 0.0;  // brute force E|x - x'|
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) gmd += w[i] * w[j] * std::abs(xs[i] - xs[j]);
        CHECK(close(gini_area(s).gmd_upper, gmd, 1e-10));
    }
}

TEST_CASE("avar_interval: examples, exact rational levels, slice consistency") {
    CHECK(avar_interval(two_interval_sample(), 0.5) == std::make_pair(1.0, 4.0));
    CHECK(avar_interval(two_interval_sample(), 1.0) == std::make_pair(1.5, 3.5));

    const BodySample det = BodySample::uniform({ConvexBody(Interval{-2.0, 7.0})});
    for (double alpha : {0.3, 0.6, 1.0}) {
        const auto [a, b] = avar_interval(det, alpha);
        CHECK(close(a, -2.0, 1e-12));
        CHECK(close(b, 7.0, 1e-12));
    }

    CHECK_THROWS_AS(avar_interval(det, 0.0), ValidationError);
    CHECK_THROWS_AS(avar_interval(det, 1.0001), ValidationError);

    // uniform n = 8: at alpha = k/8 the interval is exactly the plain mean
    // of the k most extreme end-points
    Rng rng(43);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 8;
        std::vector<ConvexBody> bodies;
        std::vector<double> lo(n), hi(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double a = rng.uniform(-5.0, 5.0), b = rng.uniform(-5.0, 5.0);
            lo[i] = std::min(a, b);
            hi[i] = std::max(a, b);
            bodies.push_back(Interval{lo[i], hi[i]});
        }
        const BodySample s = BodySample::uniform(std::move(bodies));
        std::sort(lo.begin(), lo.end());
        std::sort(hi.begin(), hi.end(), std::greater<>());
        for (std::size_t k = 1; k <= n; ++k) {
            const double alpha = static_cast<double>(k) / static_cast<double>(n);
            double slo = 0.0, shi = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                slo += lo[i];
                shi += hi[i];
            }
            const auto [a, b] = avar_interval(s, alpha);
            CHECK(a == slo / static_cast<double>(k));
            CHECK(b == shi / static_cast<double>(k));
        }
    }

    // same quantity through the trimmed-region slope scan
    for (int rep = 0; rep < 50; ++rep) {
        const BodySample s = testutil::random_interval_sample(rng, 9);
        const double alpha = rng.uniform(0.02, 1.0);
        const auto [a, b] = avar_interval(s, alpha);
        CHECK(close(b, trimmed_region_support(s, alpha, Vec{1.0}), 1e-12));
        CHECK(close(a, -trimmed_region_support(s, alpha, Vec{-1.0}), 1e-12));
    }
}

TEST_CASE("Polygon2D validation and support") {
    CHECK_THROWS_AS(Polygon2D({{0.0, 0.0}}), ValidationError);
    // clockwise square is rejected
    CHECK_THROWS_AS(Polygon2D({{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}}),
                    ValidationError);
    const Polygon2D sq({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    CHECK(sq.area() == 1.0);
    CHECK(sq.support(1.0, 1.0) == 2.0);
    CHECK(sq.support(-1.0, 0.0) == 0.0);
}
