#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esec/generator.hpp"
#include "esec/table.hpp"

using namespace esec;

namespace {

ObjectState make_obj(const std::string& id, double x, double y, double size, bool hand = false,
                     bool ground = false) {
    ObjectState o;
    o.id = id;
    o.aabb = {{x, y, -0.5 * size}, {x + size, y + size, 0.5 * size}};
    o.is_hand = hand;
    o.is_ground = ground;
    return o;
}

// Minimal synthetic stream: hand appears, then touches "cup" at a given frame.
SceneStream touch_stream(int frames, int touch_frame, bool simultaneous_second = false) {
    SceneStream s;
    s.fps = 30.0;
    for (int i = 0; i < frames; ++i) {
        FrameRecord f;
        f.index = i;
        f.t = i / s.fps;
        f.objects.push_back(make_obj("ground", -5, 0.05, 10, false, true));
        const double hand_x = i >= touch_frame ? 0.1 : -1.0; // teleports to contact
        f.objects.push_back(make_obj("hand", hand_x, -0.1, 0.1, true));
        f.objects.push_back(make_obj("cup", 0.2, -0.1, 0.1));
        if (simultaneous_second) f.objects.push_back(make_obj("anvil", 0.0, -0.1, 0.1));
        f.objects.push_back(make_obj("far", 3.0, -0.1, 0.1));
        s.frames.push_back(std::move(f));
    }
    return s;
}

} // namespace

TEST_CASE("action window spans the hand-visible frames") {
    SUBCASE("whole stream") {
        const SceneStream s = touch_stream(300, 100);
        const auto w = action_window(s);
        CHECK(w.first_frame_pos == 0);
        CHECK(w.last_frame_pos == 299);
        CHECK(w.total() == doctest::Approx(299.0 / 30.0)); // about 9.967 s
    }
    SUBCASE("late entry") {
        SceneStream s = touch_stream(330, 100);
        for (int i = 0; i < 30; ++i)
            s.frames[static_cast<std::size_t>(i)].objects.erase(
                s.frames[static_cast<std::size_t>(i)].objects.begin() + 1);
        const auto w = action_window(s);
        CHECK(w.t_start == doctest::Approx(1.0));
    }
    SUBCASE("no hand is an error") {
        SceneStream s = touch_stream(30, 5);
        for (auto& f : s.frames) f.objects.erase(f.objects.begin() + 1);
        CHECK_THROWS_WITH(action_window(s), doctest::Contains("hand"));
    }
}

TEST_CASE("first hand touch assigns object 1; idle hand assigns nothing") {
    SUBCASE("touch") {
        const RoleMap roles = assign_roles(touch_stream(60, 20));
        CHECK(roles.object_ids[0].value() == "cup");
        CHECK(roles.assign_frame[0] == 20);
        CHECK(!roles.object_ids[1]);
    }
    SUBCASE("idle") {
        const RoleMap roles = assign_roles(touch_stream(60, 1000));
        CHECK(!roles.object_ids[0]);
        const Esec e = build_esec(touch_stream(60, 1000));
        CHECK(e.columns.size() == 1); // empty action
    }
}

TEST_CASE("simultaneous first contacts break ties by id") {
    // the hand lands touching both "cup" (x 0.2) and "anvil" (x 0.0): the
    // teleported hand box at 0.1 touches anvil's right face and cup's left face
    const RoleMap roles = assign_roles(touch_stream(60, 20, true));
    CHECK(roles.object_ids[0].value() == "anvil");
    CHECK(roles.object_ids[1].value() == "cup");
    CHECK(roles.assign_frame[0] == 20);
    CHECK(roles.assign_frame[1] == 20);
}

TEST_CASE("static scene builds a single column") {
    const Esec e = build_esec(touch_stream(60, 1000));
    CHECK(e.columns.size() == 1);
    CHECK(e.columns[0].tn[3] == Tn::N); // hand vs ground row
}

TEST_CASE("rebuilding the same stream is bitwise identical") {
    const SceneStream s = touch_stream(90, 30);
    CHECK(build_esec(s) == build_esec(s));
}

TEST_CASE("no adjacent equal columns; compression is idempotent") {
    GenParams p;
    p.action = "hide";
    p.seed = 11;
    const SceneStream s = generate_scene(p);
    BuildOptions opt;
    opt.debounce = 10;
    const Esec e = build_esec(s, opt);
    for (std::size_t j = 1; j < e.columns.size(); ++j)
        CHECK(!e.columns[j].same_cells(e.columns[j - 1]));
}

TEST_CASE("roles never re-bind and sub-tables stay consistent") {
    GenParams p;
    p.action = "take_down";
    p.seed = 3;
    BuildOptions opt;
    opt.debounce = 10;
    const Esec e = build_esec(generate_scene(p), opt);
    for (const auto& col : e.columns) {
        for (int k = 0; k < kPairCount; ++k) {
            const auto i = static_cast<std::size_t>(k);
            // touching variants only on touching cells
            if (col.ssr[i] == Ssr::To || col.ssr[i] == Ssr::Bo || col.ssr[i] == Ssr::ArT)
                CHECK(col.tn[i] == Tn::T);
            // undefined propagates across all three sub-tables
            if (col.tn[i] == Tn::U) {
                CHECK(col.ssr[i] == Ssr::U);
                CHECK(col.dsr[i] == Dsr::U);
            }
        }
    }
}

TEST_CASE("hide reproduces the reference touching pattern at the pinned columns") {
    // rows in pair order: 0=(H,1) 1=(H,2) 3=(H,G) 4=(1,2) 6=(1,G) 8=(2,G)
    for (std::uint64_t seed : {1ULL, 7ULL, 23ULL}) {
        GenParams p;
        p.action = "hide";
        p.seed = seed;
        p.distractor_count = static_cast<int>(seed % 4);
        BuildOptions opt;
        opt.debounce = 10;
        const Esec e = build_esec(generate_scene(p), opt);
        REQUIRE(e.columns.size() >= 7);
        auto tn = [&](std::size_t col, std::size_t row) { return e.columns[col].tn[row]; };
        // C0: start situation, only hand-ground defined
        CHECK(tn(0, 3) == Tn::N);
        CHECK(tn(0, 0) == Tn::U);
        // C1: static/dynamic change only
        CHECK(tn(1, 0) == Tn::U);
        // C2: hand takes the cup, which rests on the ground
        CHECK(tn(2, 0) == Tn::T);
        CHECK(tn(2, 6) == Tn::T);
        // C3: the cup leaves the ground
        CHECK(tn(3, 6) == Tn::N);
        // C4: the cup encloses the target object
        CHECK(tn(4, 4) == Tn::T);
        CHECK(tn(4, 1) == Tn::N);
        CHECK(tn(4, 8) == Tn::T);
        // C5: the cup lands and the covered object goes absent
        CHECK(tn(5, 6) == Tn::T);
        CHECK(tn(5, 1) == Tn::A);
        CHECK(tn(5, 4) == Tn::A);
        CHECK(tn(5, 8) == Tn::A);
        // C6: the hand lets go
        CHECK(tn(6, 0) == Tn::N);
    }
}

TEST_CASE("projection keeps touching rows and merges duplicate columns") {
    GenParams p;
    p.action = "hide";
    p.seed = 5;
    BuildOptions opt;
    opt.debounce = 10;
    const Esec e = build_esec(generate_scene(p), opt);
    const Sec sec = project_sec(e);
    CHECK(sec.columns.size() < e.columns.size()); // static/dynamic-only columns merge away
    for (std::size_t j = 1; j < sec.columns.size(); ++j) CHECK(!(sec.columns[j].tn == sec.columns[j - 1].tn));
    CHECK(sec.columns.front().t == e.columns.front().t);

    const Esec single = build_esec(touch_stream(60, 1000));
    CHECK(project_sec(single).columns.size() == 1);
}

TEST_CASE("json round trip preserves the table") {
    GenParams p;
    p.action = "uncover";
    p.seed = 9;
    BuildOptions opt;
    opt.debounce = 10;
    const Esec e = build_esec(generate_scene(p), opt);
    const Esec back = esec_from_json(esec_to_json(e));
    CHECK(back.columns == e.columns);
    CHECK(back.label == e.label);
    CHECK(back.t_start == doctest::Approx(e.t_start));
    CHECK(back.t_end == doctest::Approx(e.t_end));
    CHECK(back.roles.object_ids == e.roles.object_ids);
}

TEST_CASE("verbal numbering rule differs from the chronological default") {
    // hide: the chronological rule numbers the covered object 2 (it first
    // touches object 1); the verbal rule reserves 2 for un-touch events and
    // numbers it 3 instead.
    GenParams p;
    p.action = "hide";
    p.seed = 4;
    BuildOptions chrono;
    chrono.debounce = 10;
    BuildOptions verbal = chrono;
    verbal.literal_roles = true;
    const SceneStream s = generate_scene(p);
    const RoleMap a = assign_roles(s, chrono);
    const RoleMap b = assign_roles(s, verbal);
    CHECK(a.object_ids[0].value() == "cup");
    CHECK(a.object_ids[1].value() == "block");
    CHECK(b.object_ids[0].value() == "cup");
    CHECK(!b.object_ids[1].has_value());
    CHECK(b.object_ids[2].value() == "block");
}
