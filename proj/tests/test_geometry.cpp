#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esec/geometry.hpp"
#include "esec/random.hpp"

using namespace esec;

namespace {

Aabb unit_cube_at(double x, double y, double z) {
    return {{x - 0.5, y - 0.5, z - 0.5}, {x + 0.5, y + 0.5, z + 0.5}};
}

Aabb random_box(Rng& rng, double span = 2.0) {
    Vec3 a{rng.uniform(-span, span), rng.uniform(-span, span), rng.uniform(-span, span)};
    Vec3 d{rng.uniform(0.01, 1.0), rng.uniform(0.01, 1.0), rng.uniform(0.01, 1.0)};
    return {a, a + d};
}

} // namespace

TEST_CASE("metrics of identical unit cubes") {
    const Aabb a = unit_cube_at(0, 0, 0);
    const auto m = aabb_metrics(a, a);
    CHECK(m.center_distance == doctest::Approx(0.0));
    CHECK(m.face_gap[0] == 0.0);
    CHECK(m.face_gap[1] == 0.0);
    CHECK(m.face_gap[2] == 0.0);
}

TEST_CASE("center distance follows the 3-4-5 triangle") {
    const auto m = aabb_metrics(unit_cube_at(0, 0, 0), unit_cube_at(3, 4, 0));
    CHECK(m.center_distance == doctest::Approx(5.0));
}

TEST_CASE("face gap on the separated axis only") {
    const Aabb a{{0, 0, 0}, {1, 1, 1}};
    const Aabb b{{2, 0, 0}, {3, 1, 1}};
    const auto m = aabb_metrics(a, b);
    CHECK(m.face_gap[0] == doctest::Approx(1.0));
    CHECK(m.face_gap[1] == 0.0);
    CHECK(m.face_gap[2] == 0.0);
    CHECK(gap_distance(a, b) == doctest::Approx(1.0));
}

TEST_CASE("metrics are symmetric under argument swap") {
    Rng rng(99);
    for (int i = 0; i < 2000; ++i) {
        const Aabb a = random_box(rng);
        const Aabb b = random_box(rng);
        const auto ab = aabb_metrics(a, b);
        const auto ba = aabb_metrics(b, a);
        CHECK(ab.center_distance == ba.center_distance);
        for (int k = 0; k < 3; ++k) CHECK(ab.face_gap[k] == ba.face_gap[k]);
        CHECK(gap_distance(a, b) == gap_distance(b, a));
    }
}

TEST_CASE("center distance vanishes exactly for coincident centers") {
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        const Aabb a = random_box(rng);
        Aabb b = random_box(rng);
        const Vec3 shift = a.center() - b.center();
        b = b.translated(shift);
        CHECK(aabb_metrics(a, b).center_distance == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(aabb_metrics(a, b).center_distance >= 0.0);
    }
}

TEST_CASE("containment check") {
    const Aabb outer{{-1, -1, -1}, {2, 2, 2}};
    const Aabb inner{{0, 0, 0}, {1, 1, 1}};
    CHECK(outer.contains(inner));
    CHECK(!inner.contains(outer));
    CHECK(gap_distance(outer, inner) == 0.0);
}

TEST_CASE("box validity") {
    CHECK(Aabb{{0, 0, 0}, {1, 1, 1}}.valid());
    CHECK(!Aabb{{1, 0, 0}, {0, 1, 1}}.valid());
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(!Aabb{{0, 0, 0}, {inf, 1, 1}}.valid());
}
