#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esec/dynamic_relations.hpp"
#include "esec/random.hpp"

using namespace esec;

namespace {

Aabb cube_at(const Vec3& c, double half = 0.01) {
    return {{c.x - half, c.y - half, c.z - half}, {c.x + half, c.y + half, c.z + half}};
}

// Two-point trajectory stepped by hand: object a fixed at the origin,
// object b approaching along x at 2 cm per frame.
SceneStream approach_stream(double start_distance, double step, int frames) {
    SceneStream s;
    s.fps = 30.0;
    for (int i = 0; i < frames; ++i) {
        FrameRecord f;
        f.index = i;
        f.t = i / s.fps;
        ObjectState a;
        a.id = "a";
        a.aabb = cube_at({0, 0, 0});
        ObjectState b;
        b.id = "b";
        b.aabb = cube_at({start_distance - step * i, 0, 0});
        f.objects = {a, b};
        s.frames.push_back(std::move(f));
    }
    return s;
}

} // namespace

TEST_CASE("touching pair moving together") {
    DynamicConfig cfg;
    const Aabb a0 = cube_at({0, 0, 0}, 0.5), b0 = cube_at({1, 0, 0}, 0.5);
    const Aabb a1 = cube_at({0.05, 0, 0}, 0.5), b1 = cube_at({1.05, 0, 0}, 0.5);
    CHECK(dsr(a0, b0, a1, b1, Tn::T, Tn::T, cfg) == Dsr::MT);
}

TEST_CASE("touching pair at rest halts together") {
    DynamicConfig cfg;
    const Aabb a = cube_at({0, 0, 0}, 0.5), b = cube_at({1, 0, 0}, 0.5);
    CHECK(dsr(a, b, a, b, Tn::T, Tn::T, cfg) == Dsr::HT);
}

TEST_CASE("touching pair with one mover is fixed-moving together") {
    DynamicConfig cfg;
    const Aabb a = cube_at({0, 0, 0}, 0.5);
    const Aabb b0 = cube_at({1, 0, 0}, 0.5), b1 = cube_at({1.05, 0, 0}, 0.5);
    CHECK(dsr(a, b0, a, b1, Tn::T, Tn::T, cfg) == Dsr::FMT);
}

TEST_CASE("hand-stepped approach reads getting-close; its reversal moving-apart") {
    // Distance drops 0.50 -> 0.30 over the ten-frame window.
    DynamicConfig cfg;
    StaticConfig scfg;
    const SceneStream fwd = approach_stream(0.5, 0.02, 11);
    const auto track = dsr_track(fwd, "a", "b", cfg, scfg);
    CHECK(track[0] == Dsr::GC);

    SceneStream rev = fwd;
    std::reverse(rev.frames.begin(), rev.frames.end());
    for (int i = 0; i < static_cast<int>(rev.frames.size()); ++i) {
        rev.frames[static_cast<std::size_t>(i)].index = i;
        rev.frames[static_cast<std::size_t>(i)].t = i / rev.fps;
    }
    CHECK(dsr_track(rev, "a", "b", cfg, scfg)[0] == Dsr::MA);
}

TEST_CASE("static close pair is stable across the track") {
    DynamicConfig cfg;
    StaticConfig scfg;
    SceneStream s = approach_stream(0.07, 0.0, 30);
    const auto track = dsr_track(s, "a", "b", cfg, scfg);
    for (std::size_t f = 0; f < track.size(); ++f) CHECK(track[f] == Dsr::S);
}

TEST_CASE("motionless pair a meter apart is quiescent, not stable") {
    DynamicConfig cfg;
    StaticConfig scfg;
    SceneStream s = approach_stream(1.0, 0.0, 30);
    const auto track = dsr_track(s, "a", "b", cfg, scfg);
    for (std::size_t f = 0; f < track.size(); ++f) CHECK(track[f] == Dsr::Q);
}

TEST_CASE("stream shorter than the window stays undefined") {
    DynamicConfig cfg;
    StaticConfig scfg;
    SceneStream s = approach_stream(0.5, 0.01, 9);
    const auto track = dsr_track(s, "a", "b", cfg, scfg);
    for (std::size_t f = 0; f < track.size(); ++f) CHECK(track[f] == Dsr::U);
}

TEST_CASE("pair never co-existing stays undefined") {
    DynamicConfig cfg;
    StaticConfig scfg;
    SceneStream s = approach_stream(0.5, 0.01, 30);
    const auto track = dsr_track(s, "a", "missing", cfg, scfg);
    for (std::size_t f = 0; f < track.size(); ++f) CHECK(track[f] == Dsr::U);
}

TEST_CASE("trailing frames hold the last computable label") {
    DynamicConfig cfg;
    StaticConfig scfg;
    SceneStream s = approach_stream(0.07, 0.0, 30);
    const auto track = dsr_track(s, "a", "b", cfg, scfg);
    CHECK(track.back() == Dsr::S);
}

TEST_CASE("mixed touching at the window ends reads quiescent") {
    DynamicConfig cfg;
    const Aabb a = cube_at({0, 0, 0}, 0.5);
    CHECK(dsr(a, cube_at({1, 0, 0}, 0.5), a, cube_at({1.3, 0, 0}, 0.5), Tn::T, Tn::N, cfg) == Dsr::Q);
}

TEST_CASE("paper-literal inequality labels a resting far pair getting-close") {
    DynamicConfig cfg;
    cfg.paper_literal_gc = true;
    const Aabb a = cube_at({0, 0, 0});
    const Aabb b = cube_at({1, 0, 0});
    CHECK(dsr(a, b, a, b, Tn::N, Tn::N, cfg) == Dsr::GC);
}

TEST_CASE("property: exactly one label per evaluation and symmetry") {
    DynamicConfig cfg;
    StaticConfig scfg;
    Rng rng(77);
    for (int round = 0; round < 1000; ++round) {
        const Vec3 pa{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), 0};
        const Vec3 pb{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), 0};
        const Vec3 va{rng.uniform(-0.02, 0.02), rng.uniform(-0.02, 0.02), 0};
        const Vec3 vb{rng.uniform(-0.02, 0.02), rng.uniform(-0.02, 0.02), 0};
        const double half = rng.uniform(0.01, 0.05);
        const Aabb a0 = cube_at(pa, half), b0 = cube_at(pb, half);
        const Aabb a1 = cube_at(pa + va * 10.0, half), b1 = cube_at(pb + vb * 10.0, half);
        StaticConfig sc;
        const Tn t0 = touching_boxes(a0, b0, sc);
        const Tn t1 = touching_boxes(a1, b1, sc);
        const Dsr fwd = dsr(a0, b0, a1, b1, t0, t1, cfg);
        const Dsr swapped = dsr(b0, a0, b1, a1, t0, t1, cfg);
        CHECK(fwd == swapped);

        // threshold monotonicity: a larger xi never introduces GC/MA
        DynamicConfig wide = cfg;
        wide.xi = cfg.xi * 3.0;
        const Dsr relaxed = dsr(a0, b0, a1, b1, t0, t1, wide);
        if (relaxed == Dsr::GC || relaxed == Dsr::MA) CHECK(relaxed == fwd);
    }
}
