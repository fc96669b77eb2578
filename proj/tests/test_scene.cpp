#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esec/random.hpp"
#include "esec/scene.hpp"

using namespace esec;

namespace {

const char* kHeader = R"({"fps":30.0,"label":"hide","y_down":true})";

std::string frame_line(int i, double t, const std::string& objects) {
    return "{\"i\":" + std::to_string(i) + ",\"t\":" + std::to_string(t) + ",\"objects\":[" + objects + "]}";
}

std::string obj(const std::string& id, double x, bool hand = false, bool ground = false) {
    return "{\"id\":\"" + id + "\",\"min\":[" + std::to_string(x) + ",0,0],\"max\":[" +
           std::to_string(x + 1) + ",1,1],\"visible\":true,\"intact\":true,\"hand\":" +
           (hand ? "true" : "false") + ",\"ground\":" + (ground ? "true" : "false") + "}";
}

} // namespace

TEST_CASE("minimal well-formed stream parses") {
    const std::string text = std::string(kHeader) + "\n" +
                             frame_line(0, 0.0, obj("hand", 0, true) + "," + obj("ground", 2, false, true) +
                                                    "," + obj("cup", 4));
    const SceneStream s = parse_scene_string(text);
    CHECK(s.frames.size() == 1);
    CHECK(s.frames[0].objects.size() == 3);
    CHECK(s.fps == 30.0);
    CHECK(s.label.value() == "hide");
}

TEST_CASE("non-monotonic timestamps rejected") {
    const std::string text = std::string(kHeader) + "\n" + frame_line(0, 0.1, obj("a", 0)) + "\n" +
                             frame_line(1, 0.0, obj("a", 0));
    CHECK_THROWS_WITH_AS(parse_scene_string(text), doctest::Contains("non-monotonic"), ParseError);
}

TEST_CASE("two grounds rejected") {
    const std::string text = std::string(kHeader) + "\n" +
                             frame_line(0, 0.0, obj("g1", 0, false, true) + "," + obj("g2", 2, false, true));
    CHECK_THROWS_WITH_AS(parse_scene_string(text), doctest::Contains("multiple grounds"), ParseError);
}

TEST_CASE("duplicate ids in a frame rejected") {
    const std::string text = std::string(kHeader) + "\n" + frame_line(0, 0.0, obj("a", 0) + "," + obj("a", 2));
    CHECK_THROWS_WITH_AS(parse_scene_string(text), doctest::Contains("duplicate object_id"), ParseError);
}

TEST_CASE("zero frames rejected") {
    CHECK_THROWS_WITH_AS(parse_scene_string(std::string(kHeader) + "\n"), doctest::Contains("zero frames"),
                         ParseError);
    CHECK_THROWS_AS(parse_scene_string(""), ParseError);
}

TEST_CASE("malformed json rejected") {
    CHECK_THROWS_WITH_AS(parse_scene_string(std::string(kHeader) + "\n{not json"),
                         doctest::Contains("malformed record"), ParseError);
}

TEST_CASE("world-up data is flipped to the image axis on ingestion") {
    const std::string text = std::string(R"({"fps":30.0,"label":null,"y_down":false})") + "\n" +
                             frame_line(0, 0.0, obj("a", 0));
    const SceneStream s = parse_scene_string(text);
    CHECK(s.y_down); // normalized
    CHECK(s.frames[0].objects[0].aabb.min.y == doctest::Approx(-1.0));
    CHECK(s.frames[0].objects[0].aabb.max.y == doctest::Approx(0.0));
}

TEST_CASE("parse of serialize is the identity on random streams") {
    Rng rng(4242);
    for (int round = 0; round < 25; ++round) {
        SceneStream s;
        s.fps = 30.0;
        if (rng.uniform() < 0.5) s.label = "cut";
        const int frames = 1 + static_cast<int>(rng.below(5));
        for (int i = 0; i < frames; ++i) {
            FrameRecord f;
            f.index = i;
            f.t = i / s.fps;
            const int objs = 1 + static_cast<int>(rng.below(4));
            for (int o = 0; o < objs; ++o) {
                ObjectState st;
                st.id = "obj" + std::to_string(o);
                Vec3 lo{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
                st.aabb = {lo, lo + Vec3{rng.uniform(0.01, 0.5), rng.uniform(0.01, 0.5), rng.uniform(0.01, 0.5)}};
                st.visible = rng.uniform() < 0.9;
                st.intact = rng.uniform() < 0.9;
                st.is_hand = o == 0;
                st.is_ground = o == 1;
                if (rng.uniform() < 0.2) st.point_set = std::vector<Vec3>{lo, lo + Vec3{0.1, 0.1, 0.1}};
                f.objects.push_back(std::move(st));
            }
            s.frames.push_back(std::move(f));
        }
        const SceneStream back = parse_scene_string(serialize_scene(s));
        CHECK(back == s);
    }
}
