#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "cvtq/geom.hpp"
#include "support.hpp"

using namespace cvtq;

namespace {

ConvexPolygon unit_square() {
    return make_convex_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

ConvexPolygon corner_triangle() {
    return make_convex_polygon({{0, 0}, {1, 0}, {0, 1}});
}

}  // namespace

TEST_CASE("polygon construction canonicalizes and validates") {
    const ConvexPolygon cw = make_convex_polygon({{0, 1}, {1, 1}, {1, 0}, {0, 0}});
    CHECK(polygon_area(cw) == doctest::Approx(1.0).epsilon(1e-15));

    const ConvexPolygon with_collinear =
        make_convex_polygon({{0, 0}, {0.5, 0.0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(with_collinear.vertices.size() == 4);

    CHECK_THROWS_AS(make_convex_polygon({{0, 0}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_convex_polygon({{0, 0}, {1, 0}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_convex_polygon({{0, 0}, {2, 0}, {2, 2}, {1, 1}, {0, 2}}),
                    std::invalid_argument);
    const double nan = std::nan("");
    CHECK_THROWS_AS(make_convex_polygon({{0, 0}, {1, 0}, {nan, 1}}), std::invalid_argument);
}

TEST_CASE("areas and centroids of reference shapes") {
    CHECK(polygon_area(unit_square()) == doctest::Approx(1.0).epsilon(1e-15));
    const Point sc = polygon_centroid(unit_square());
    CHECK(sc.x1 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(sc.x2 == doctest::Approx(0.5).epsilon(1e-14));

    CHECK(polygon_area(corner_triangle()) == doctest::Approx(0.5).epsilon(1e-15));
    const Point tc = polygon_centroid(corner_triangle());
    CHECK(tc.x1 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(tc.x2 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("quadratic moments are exact") {
    const ConvexPolygon sq = unit_square();
    CHECK(polygon_moment(sq, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(polygon_moment(sq, 2, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(polygon_moment(sq, 0, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(polygon_moment(sq, 1, 1) == doctest::Approx(0.25).epsilon(1e-14));

    const ConvexPolygon tr = corner_triangle();
    CHECK(polygon_moment(tr, 2, 0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    CHECK(polygon_moment(tr, 1, 1) == doctest::Approx(1.0 / 24.0).epsilon(1e-14));

    CHECK_THROWS_AS(polygon_moment(sq, 2, 1), std::domain_error);
    CHECK_THROWS_AS(polygon_moment(sq, -1, 0), std::domain_error);
}

TEST_CASE("half-plane clipping") {
    const ConvexPolygon sq = unit_square();
    const HalfPlane left{{1, 0}, 0.5};

    auto clipped = clip_halfplane(sq, left);
    REQUIRE(clipped.has_value());
    CHECK(polygon_area(*clipped) == doctest::Approx(0.5).epsilon(1e-14));
    const Point c = polygon_centroid(*clipped);
    CHECK(c.x1 == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(c.x2 == doctest::Approx(0.5).epsilon(1e-13));

    CHECK_FALSE(clip_halfplane(sq, HalfPlane{{1, 0}, -0.5}).has_value());
    CHECK_FALSE(clip_halfplane(sq, HalfPlane{{1, 0}, 1e-13}).has_value());

    auto whole = clip_halfplane(sq, HalfPlane{{1, 0}, 2.0});
    REQUIRE(whole.has_value());
    CHECK(polygon_area(*whole) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("clipping by a half-plane and its complement conserves area") {
    for (int trial = 0; trial < 50; ++trial) {
        const ConvexPolygon poly = testsup::random_convex_polygon(11, trial);
        const Point inside = polygon_centroid(poly);
        cvtq::num::CounterRng rng(17, trial);
        const double ang = 2.0 * M_PI * rng.next_double();
        const HalfPlane h{{std::cos(ang), std::sin(ang)},
                          std::cos(ang) * inside.x1 + std::sin(ang) * inside.x2};
        const auto a = clip_halfplane(poly, h);
        const auto b = clip_halfplane(poly, complement(h));
        const double total = (a ? polygon_area(*a) : 0.0) + (b ? polygon_area(*b) : 0.0);
        CHECK(total == doctest::Approx(polygon_area(poly)).epsilon(1e-12));
    }
}

TEST_CASE("random hull polygons are strictly convex") {
    for (int trial = 0; trial < 20; ++trial) {
        const ConvexPolygon poly = testsup::random_convex_polygon(5, trial);
        const std::size_t n = poly.vertices.size();
        REQUIRE(n >= 3);
        for (std::size_t i = 0; i < n; ++i) {
            const Point e1 = poly.vertices[(i + 1) % n] - poly.vertices[i];
            const Point e2 = poly.vertices[(i + 2) % n] - poly.vertices[(i + 1) % n];
            CHECK(cross(e1, e2) > 0.0);
        }
    }
}

TEST_CASE("half-plane membership") {
    const HalfPlane h{{0, 1}, 2.0};
    CHECK(contains(h, {100.0, 2.0}));
    CHECK(contains(h, {0.0, -50.0}));
    CHECK_FALSE(contains(h, {0.0, 2.1}));
    CHECK(contains(h, {0.0, 2.05}, 0.1));
    const HalfPlane hc = complement(h);
    CHECK(contains(hc, {0.0, 2.1}));
    CHECK_FALSE(contains(hc, {0.0, 1.9}));
}
