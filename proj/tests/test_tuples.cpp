#include <doctest.h>

#include <cmath>
#include <vector>

#include "liftexp/error.hpp"
#include "liftexp/lift.hpp"
#include "liftexp/tuples.hpp"
#include "test_util.hpp"

using namespace liftexp;
using testutil::close;
using testutil::Rng;

namespace {

CoupledTupleSample self_tuple(const BodySample& s, std::size_t n) {
    std::vector<std::vector<ConvexBody>> obs;
    for (std::size_t i = 0; i < s.size(); ++i) obs.emplace_back(n, s.body(i));
    return CoupledTupleSample(std::move(obs), s.weights());
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v;
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

// the nonuniqueness pair shifted so every realization contains the origin
BodySample shifted_pair_a() {
    return BodySample({Interval{-1.0, 1.0}, Interval{0.0, 2.0}}, std::vector<double>{0.5, 0.5});
}

BodySample shifted_pair_b() {
    return BodySample({Interval{-1.0, 2.0}, Interval{0.0, 1.0}}, std::vector<double>{0.5, 0.5});
}

}  // namespace

TEST_CASE("tuple_lift_support: reductions and the coupled self-pair") {
    const BodySample s =
        BodySample({Interval{1.0, 3.0}, Interval{2.0, 4.0}}, std::vector<double>{0.5, 0.5});

    // n = 1 reduces to the plain lift support
    const CoupledTupleSample t1 = self_tuple(s, 1);
    for (double u0 : {-3.0, 0.0, 2.0})
        for (double u : {1.0, -1.0, 0.5})
            CHECK(close(tuple_lift_support(t1, u0, std::vector<Vec>{Vec{u}}),
                        lift_support(s, u0, Vec{u}), 1e-12));

    const CoupledTupleSample t2 = self_tuple(s, 2);
    // all slot directions zero: (u0)_+
    CHECK(tuple_lift_support(t2, 1.5, std::vector<Vec>{Vec{0.0}, Vec{0.0}}) == 1.5);
    CHECK(tuple_lift_support(t2, -1.5, std::vector<Vec>{Vec{0.0}, Vec{0.0}}) == 0.0);
    // coupled supports 3+3 and 4+4 against u0 = -5
    CHECK(tuple_lift_support(t2, -5.0, std::vector<Vec>{Vec{1.0}, Vec{1.0}}) == 2.0);

    CHECK_THROWS_AS(tuple_lift_support(t2, 0.0, std::vector<Vec>{Vec{1.0}}), ValidationError);
    CHECK_THROWS_AS(tuple_lift_support(t2, 0.0, std::vector<Vec>{Vec{1.0}, Vec{1.0, 0.0}}),
                    ValidationError);
}

TEST_CASE("slot marginalization is exact") {
    Rng rng(83);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t d = static_cast<std::size_t>(rng.uniform_int(1, 3));
        const BodySample s = testutil::random_sample(rng, d, 5);
        const std::size_t n = 1 + rng.index(3);
        const CoupledTupleSample t = self_tuple(s, n);
        const std::size_t live = rng.index(n);
        std::vector<Vec> us(n, Vec::zero(d));
        const Vec u = testutil::random_vec(rng, d, 2.0);
        us[live] = u;
        const double u0 = rng.uniform(-5.0, 5.0);
        CHECK(tuple_lift_support(t, u0, us) == lift_support(s, u0, u));
    }
}

TEST_CASE("permutation invariance for self-tuples") {
    Rng rng(89);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t d = static_cast<std::size_t>(rng.uniform_int(1, 2));
        const BodySample s = testutil::random_sample(rng, d, 4);
        const CoupledTupleSample t = self_tuple(s, 3);
        std::vector<Vec> us{testutil::random_vec(rng, d, 2.0), testutil::random_vec(rng, d, 2.0),
                            testutil::random_vec(rng, d, 2.0)};
        const double u0 = rng.uniform(-4.0, 4.0);
        const double base = tuple_lift_support(t, u0, us);
        std::vector<Vec> perm{us[2], us[0], us[1]};
        CHECK(close(tuple_lift_support(t, u0, perm), base, 1e-12));
    }
}

TEST_CASE("self_tuple_distinguishes: the origin-shifted nonuniqueness pair") {
    const BodySample a = shifted_pair_a();
    const BodySample b = shifted_pair_b();
    const std::vector<double> u0s = linspace(-5.0, 5.0, 50);
    const std::vector<Vec> dirs = [] {
        std::vector<Vec> v;
        for (double x : linspace(-1.0, 1.0, 50)) v.push_back(Vec{x});
        return v;
    }();

    CHECK(!self_tuple_distinguishes(a, a, 2, u0s, dirs));
    CHECK(!self_tuple_distinguishes(a, b, 1, u0s, dirs));
    CHECK(self_tuple_distinguishes(a, b, 2, u0s, dirs));

    // distinct means separate already at n = 1
    const BodySample c =
        BodySample({Interval{-1.0, 1.5}, Interval{0.0, 2.0}}, std::vector<double>{0.5, 0.5});
    CHECK(self_tuple_distinguishes(a, c, 1, u0s, dirs));

    // bodies missing the origin violate the hypothesis
    const BodySample off = BodySample::uniform({ConvexBody(Interval{1.0, 2.0})});
    CHECK_THROWS_AS(self_tuple_distinguishes(off, off, 1, u0s, dirs), ValidationError);
}

TEST_CASE("zonoid and lift zonoid supports") {
    const VectorSample det = VectorSample::uniform({Vec{2.0, -1.0}});
    for (const Vec& u : {Vec{1.0, 0.0}, Vec{0.0, 1.0}, Vec{-1.0, 2.0}}) {
        const double s = dot(Vec{2.0, -1.0}, u);
        CHECK(zonoid_support(det, u) == (s > 0.0 ? s : 0.0));
    }

    const VectorSample bernoulli =
        VectorSample({Vec{0.0}, Vec{1.0}}, std::vector<double>{0.5, 0.5});
    CHECK(lift_zonoid_support(bernoulli, 0.0, Vec{1.0}) == 0.5);
    CHECK(lift_zonoid_support(bernoulli, -0.5, Vec{1.0}) == 0.25);

    // multiplying by an independent mean-one nonnegative factor preserves the
    // zonoid: explicit two-atom construction (factor 2 with mass 1/2, else 0)
    Rng rng(97);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t d = static_cast<std::size_t>(rng.uniform_int(1, 3));
        const std::size_t n = 1 + rng.index(5);
        std::vector<Vec> pts, mixed;
        std::vector<double> w = testutil::random_weights(rng, n), wm;
        for (std::size_t i = 0; i < n; ++i) {
            pts.push_back(testutil::random_vec(rng, d, 3.0));
            mixed.push_back(2.0 * pts.back());
            wm.push_back(w[i] * 0.5);
        }
        mixed.push_back(Vec::zero(d));
        wm.push_back(0.5);
        const VectorSample base(std::move(pts), std::move(w));
        const VectorSample scaled(std::move(mixed), std::move(wm));
        for (int k = 0; k < 10; ++k) {
            const Vec u = testutil::random_vec(rng, d, 2.0);
            CHECK(close(zonoid_support(base, u), zonoid_support(scaled, u), 1e-12));
        }
    }
}

TEST_CASE("interval pair projections") {
    const BodySample s =
        BodySample({Interval{1.0, 3.0}, Interval{2.0, 4.0}}, std::vector<double>{0.5, 0.5});
    const IntervalPairProjections proj = interval_pair_projections(s);

    // slot projections restrict the R^3 support to a coordinate plane and
    // there they are the plain interval lift
    Rng rng(101);
    for (int k = 0; k < 50; ++k) {
        const double u0 = rng.uniform(-6.0, 6.0);
        const double v = rng.uniform(-2.0, 2.0);
        CHECK(proj.first_slot(u0, v) == lift_support(s, u0, Vec{v}));
        CHECK(proj.second_slot(u0, v) == lift_support(s, u0, Vec{v}));
    }

    CHECK(proj.slot_plane(1.0, 1.0) == 7.0);

    // the slot-plane projection is not the end-point zonoid: measure the gap
    CHECK(proj.endpoint_zonoid(1.0, 1.0) == 0.5 * 4.0 + 0.5 * 6.0);
    CHECK(proj.plane_zonoid_gap(1.0, 1.0) == 2.0);
    CHECK(proj.plane_zonoid_gap(0.0, 1.0) == 0.0);  // single end-point: no gap
    // and the end-point lift zonoid restricts to the zonoid at u0 = 0
    for (int k = 0; k < 20; ++k) {
        const double v = rng.uniform(-2.0, 2.0), w = rng.uniform(-2.0, 2.0);
        CHECK(proj.endpoint_lift_zonoid(0.0, v, w) == proj.endpoint_zonoid(v, w));
    }

    CHECK_THROWS_AS(
        interval_pair_projections(BodySample::uniform({ConvexBody(Ball{{0.0}, 1.0})})),
        ValidationError);
}

TEST_CASE("tuple sample validation") {
    CHECK_THROWS_AS(CoupledTupleSample({}, std::vector<double>{}), ValidationError);
    CHECK_THROWS_AS(
        CoupledTupleSample({{ConvexBody(Interval{0.0, 1.0})},
                            {ConvexBody(Interval{0.0, 1.0}), ConvexBody(Interval{0.0, 2.0})}},
                           std::vector<double>{0.5, 0.5}),
        ValidationError);
    CHECK_THROWS_AS(CoupledTupleSample(
                        {{ConvexBody(Interval{0.0, 1.0})}, {ConvexBody(Ball{{0.0, 0.0}, 1.0})}},
                        std::vector<double>{0.5, 0.5}),
                    ValidationError);
}
