#pragma once

#include "esec/geometry.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace esec {

/// Thrown on malformed or inconsistent scene files.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// One object in one frame. Flags carry ground truth that is not inferred
/// from geometry: visible=false marks a disappeared object (absent, "A"),
/// intact=false a destroyed one ("X").
struct ObjectState {
    std::string id;
    Aabb aabb;
    bool visible = true;
    bool intact = true;
    bool is_hand = false;
    bool is_ground = false;
    std::optional<std::vector<Vec3>> point_set;

    bool operator==(const ObjectState&) const = default;
};

struct FrameRecord {
    int index = 0;
    double t = 0.0; // seconds
    std::vector<ObjectState> objects;

    const ObjectState* find(const std::string& id) const;
    bool operator==(const FrameRecord&) const = default;
};

/// Time-ordered stream of frames. Values are immutable after construction;
/// the whole type is safe to share across concurrent readers.
struct SceneStream {
    std::vector<FrameRecord> frames;
    double fps = 30.0;
    std::optional<std::string> label;
    bool y_down = true; // true: paper-literal image axis already, no flip applied

    bool operator==(const SceneStream&) const = default;
};

/// Parse the line-delimited JSON scene format. First line is the header
/// `{"fps":..,"label":..,"y_down":..}`, each further line one frame.
/// Throws ParseError on malformed records, non-monotonic timestamps,
/// duplicate object ids within a frame, multiple grounds/hands, zero frames.
SceneStream parse_scene(std::istream& in);
SceneStream parse_scene_string(const std::string& text);
SceneStream load_scene(const std::string& path);

/// Inverse of parse_scene; parse(serialize(s)) == s for valid streams.
std::string serialize_scene(const SceneStream& s);
void save_scene(const SceneStream& s, const std::string& path);

/// Validation used by parse_scene, exposed for streams built in memory.
void validate_scene(const SceneStream& s);

} // namespace esec
