#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esec/generator.hpp"
#include "esec/similarity.hpp"
#include "esec/table.hpp"

#include <filesystem>
#include <fstream>

using namespace esec;
namespace fs = std::filesystem;

namespace {

BuildOptions suite_options() {
    BuildOptions opt;
    opt.debounce = 10;
    return opt;
}

} // namespace

TEST_CASE("every action generates a stream that passes validation") {
    for (const auto& act : action_names()) {
        GenParams p;
        p.action = act;
        p.seed = 42;
        p.distractor_count = 2;
        const SceneStream s = generate_scene(p); // validated internally
        CHECK(!s.frames.empty());
        CHECK(s.label.value() == act);
        // hand present exactly within a contiguous window
        const auto w = action_window(s);
        CHECK(w.first_frame_pos > 0);
        CHECK(w.last_frame_pos < static_cast<int>(s.frames.size()) - 1);
    }
}

TEST_CASE("unknown actions and bad parameters are rejected") {
    GenParams p;
    p.action = "moonwalk";
    CHECK_THROWS_WITH(generate_scene(p), doctest::Contains("unknown action"));
    p.action = "hide";
    p.distractor_count = 9;
    CHECK_THROWS_AS(generate_scene(p), std::invalid_argument);
}

TEST_CASE("same parameters and seed give byte-identical streams") {
    GenParams p;
    p.action = "chop";
    p.seed = 777;
    p.distractor_count = 3;
    CHECK(serialize_scene(generate_scene(p)) == serialize_scene(generate_scene(p)));
}

TEST_CASE("distractors never enter the table") {
    GenParams p;
    p.action = "push";
    p.seed = 31;
    p.distractor_count = 0;
    const Esec bare = build_esec(generate_scene(p), suite_options());
    p.distractor_count = 3;
    const Esec crowded = build_esec(generate_scene(p), suite_options());
    CHECK(bare.columns == crowded.columns);
    CHECK(bare.roles.object_ids == crowded.roles.object_ids);
}

TEST_CASE("destroyed and hidden objects carry the right flags") {
    SUBCASE("cut destroys its target") {
        GenParams p;
        p.action = "cut";
        p.seed = 8;
        const SceneStream s = generate_scene(p);
        bool saw_intact = false, saw_destroyed = false;
        for (const auto& f : s.frames)
            if (const ObjectState* b = f.find("block")) {
                (b->intact ? saw_intact : saw_destroyed) = true;
            }
        CHECK(saw_intact);
        CHECK(saw_destroyed);
    }
    SUBCASE("hide makes its target absent") {
        GenParams p;
        p.action = "hide";
        p.seed = 8;
        const SceneStream s = generate_scene(p);
        CHECK(s.frames.front().find("block")->visible);
        CHECK(!s.frames.back().find("block")->visible);
    }
    SUBCASE("uncover reveals its target") {
        GenParams p;
        p.action = "uncover";
        p.seed = 8;
        const SceneStream s = generate_scene(p);
        CHECK(!s.frames.front().find("block")->visible);
        CHECK(s.frames.back().find("block")->visible);
    }
}

TEST_CASE("within-class tables agree more than cross-class tables") {
    std::map<std::string, std::vector<Esec>> classes;
    for (const auto& act : action_names()) {
        for (int v = 0; v < 3; ++v) {
            GenParams p;
            p.action = act;
            p.seed = 100 + 13 * static_cast<std::uint64_t>(v);
            p.distractor_count = v;
            classes[act].push_back(build_esec(generate_scene(p), suite_options()));
        }
    }
    double within = 0.0;
    int within_n = 0;
    double cross = 0.0;
    int cross_n = 0;
    for (const auto& [na, va] : classes)
        for (const auto& [nb, vb] : classes)
            for (std::size_t i = 0; i < va.size(); ++i)
                for (std::size_t j = 0; j < vb.size(); ++j) {
                    if (na == nb && i >= j) continue;
                    const double s = esec_similarity(va[i], vb[j]);
                    if (na == nb) {
                        within += s;
                        ++within_n;
                    } else {
                        cross += s;
                        ++cross_n;
                    }
                }
    CHECK(within / within_n > cross / cross_n);
}

TEST_CASE("suite generation is deterministic and writes a manifest") {
    const fs::path dir = fs::temp_directory_path() / "esec_suite_test";
    fs::remove_all(dir);
    const auto files = generate_suite({"hide", "push"}, 2, 99, dir.string(), 2);
    CHECK(files.size() == 4);
    CHECK(fs::exists(dir / "manifest.json"));
    for (const auto& f : files) CHECK(fs::exists(f.path));

    auto read = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string first = read(files[0].path);
    fs::remove_all(dir);
    generate_suite({"hide", "push"}, 2, 99, dir.string(), 1);
    CHECK(read(files[0].path) == first); // same master seed, any job count
    fs::remove_all(dir);
}
