#include "esec/scene.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

using nlohmann::json;

namespace esec {

const ObjectState* FrameRecord::find(const std::string& id) const {
    for (const auto& o : objects)
        if (o.id == id) return &o;
    return nullptr;
}

namespace {

Vec3 vec_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw ParseError(std::string("malformed record: ") + what + " is not a 3-vector");
    Vec3 v{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
        throw ParseError(std::string("malformed record: non-finite ") + what);
    return v;
}

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

ObjectState object_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("malformed record: object entry is not a JSON object");
    ObjectState o;
    o.id = j.at("id").get<std::string>();
    o.aabb.min = vec_from_json(j.at("min"), "min");
    o.aabb.max = vec_from_json(j.at("max"), "max");
    o.visible = j.value("visible", true);
    o.intact = j.value("intact", true);
    o.is_hand = j.value("hand", false);
    o.is_ground = j.value("ground", false);
    if (j.contains("points")) {
        std::vector<Vec3> pts;
        for (const auto& p : j.at("points")) pts.push_back(vec_from_json(p, "points"));
        o.point_set = std::move(pts);
    }
    if (!o.aabb.valid()) throw ParseError("malformed record: invalid box for object '" + o.id + "'");
    return o;
}

json object_to_json(const ObjectState& o) {
    json j;
    j["id"] = o.id;
    j["min"] = vec_to_json(o.aabb.min);
    j["max"] = vec_to_json(o.aabb.max);
    j["visible"] = o.visible;
    j["intact"] = o.intact;
    j["hand"] = o.is_hand;
    j["ground"] = o.is_ground;
    if (o.point_set) {
        json pts = json::array();
        for (const auto& p : *o.point_set) pts.push_back(vec_to_json(p));
        j["points"] = pts;
    }
    return j;
}

// World-up data is flipped on ingestion so the in-memory convention is
// always the paper's image-style y axis.
void flip_y(SceneStream& s) {
    for (auto& f : s.frames) {
        for (auto& o : f.objects) {
            const double lo = -o.aabb.max.y, hi = -o.aabb.min.y;
            o.aabb.min.y = lo;
            o.aabb.max.y = hi;
            if (o.point_set)
                for (auto& p : *o.point_set) p.y = -p.y;
        }
    }
}

} // namespace

void validate_scene(const SceneStream& s) {
    if (s.frames.empty()) throw ParseError("zero frames");
    if (!(s.fps > 0.0)) throw ParseError("fps must be positive");
    std::optional<std::string> ground_id;
    double prev_t = -1.0;
    bool first = true;
    for (const auto& f : s.frames) {
        if (!first && !(f.t > prev_t)) throw ParseError("non-monotonic timestamps");
        prev_t = f.t;
        first = false;
        std::set<std::string> ids;
        int hands = 0;
        int grounds = 0;
        for (const auto& o : f.objects) {
            if (!ids.insert(o.id).second) throw ParseError("duplicate object_id '" + o.id + "' in frame " + std::to_string(f.index));
            if (!o.aabb.valid()) throw ParseError("invalid box for object '" + o.id + "'");
            if (o.is_hand) ++hands;
            if (o.is_ground) {
                ++grounds;
                if (ground_id && *ground_id != o.id) throw ParseError("multiple grounds");
                ground_id = o.id;
            }
        }
        if (hands > 1) throw ParseError("multiple hands in frame " + std::to_string(f.index));
        if (grounds > 1) throw ParseError("multiple grounds");
    }
}

SceneStream parse_scene(std::istream& in) {
    SceneStream s;
    std::string line;
    bool have_header = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError("malformed record at line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!have_header) {
            if (!j.contains("fps")) throw ParseError("malformed record: missing header line with fps");
            s.fps = j.at("fps").get<double>();
            if (j.contains("label") && !j.at("label").is_null()) s.label = j.at("label").get<std::string>();
            s.y_down = j.value("y_down", true);
            have_header = true;
            continue;
        }
        FrameRecord f;
        try {
            f.index = j.at("i").get<int>();
            f.t = j.at("t").get<double>();
            for (const auto& jo : j.at("objects")) f.objects.push_back(object_from_json(jo));
        } catch (const json::exception& e) {
            throw ParseError("malformed record at line " + std::to_string(line_no) + ": " + e.what());
        }
        s.frames.push_back(std::move(f));
    }
    if (!have_header) throw ParseError("zero frames");
    if (!s.y_down) {
        flip_y(s);
        s.y_down = true;
    }
    validate_scene(s);
    return s;
}

SceneStream parse_scene_string(const std::string& text) {
    std::istringstream in(text);
    return parse_scene(in);
}

SceneStream load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scene file: " + path);
    return parse_scene(in);
}

std::string serialize_scene(const SceneStream& s) {
    std::ostringstream out;
    json header;
    header["fps"] = s.fps;
    header["label"] = s.label ? json(*s.label) : json(nullptr);
    header["y_down"] = s.y_down;
    out << header.dump() << '\n';
    for (const auto& f : s.frames) {
        json j;
        j["i"] = f.index;
        j["t"] = f.t;
        json objs = json::array();
        for (const auto& o : f.objects) objs.push_back(object_to_json(o));
        j["objects"] = objs;
        out << j.dump() << '\n';
    }
    return out.str();
}

void save_scene(const SceneStream& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write scene file: " + path);
    out << serialize_scene(s);
}

} // namespace esec
