#pragma once

#include "esec/relations.hpp"
#include "esec/scene.hpp"
#include "esec/static_relations.hpp"

#include <vector>

namespace esec {

/// Windowed relation thresholds. Lengths in meters, window in frames.
struct DynamicConfig {
    int window = 10;            // frame offset between the two compared samples
    double xi = 0.10;           // distance-change threshold for GC/MA
    double stable_eps = 0.01;   // distance-change bound for S
    double far_threshold = 0.10; // center distance beyond which a resting pair is Q
    double move_eps = 0.005;    // center displacement deadband for "has moved"
    bool paper_literal_gc = false; // keep the literal GC inequality (delta < +xi) for comparison runs
};

/// Dynamic relation of a pair from its boxes at frame f and frame f + window.
/// tn_f / tn_w are the touching states at the two samples.
Dsr dsr(const Aabb& a_f, const Aabb& b_f, const Aabb& a_w, const Aabb& b_w,
        Tn tn_f, Tn tn_w, const DynamicConfig& cfg);

/// Per-frame dynamic relation track for a pair of object ids over a stream.
/// Frames whose forward window runs past the end hold the last computable
/// label; a stream shorter than the window is all U, as is a pair that
/// never co-exists.
std::vector<Dsr> dsr_track(const SceneStream& stream, const std::string& id_a,
                           const std::string& id_b, const DynamicConfig& cfg,
                           const StaticConfig& static_cfg);

} // namespace esec
