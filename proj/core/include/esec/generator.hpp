#pragma once

#include "esec/scene.hpp"
#include "esec/static_relations.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace esec {

/// The ten scripted manipulation actions.
const std::vector<std::string>& action_names();

struct GenParams {
    std::string action;
    double fps = 30.0;
    int distractor_count = 0; // 0..3 extra never-roled objects
    double speed_scale = 1.0; // > 1 slows everything down proportionally
    std::uint64_t seed = 1;
    // Action duration range in seconds; 0 means the per-action default
    // (the published human mean +- sd for the five benchmark actions).
    double duration_min = 0.0;
    double duration_max = 0.0;
    // Touching tolerance assumed for ground-truth flag placement (absence
    // fires the frame an enclosure lands, reveals fire on separation).
    double eps_touch = 0.005;
};

/// Deterministic scripted synthesis of one labeled action recording.
/// Throws std::invalid_argument for unknown actions or infeasible geometry.
SceneStream generate_scene(const GenParams& params);

struct SuiteFile {
    std::string path;
    std::string action;
    int variant = 0;
    std::uint64_t seed = 0;
};

/// Write variants_per_action labeled scene files per action plus a
/// manifest.json; per-file seeds derive from the master seed.
std::vector<SuiteFile> generate_suite(const std::vector<std::string>& actions,
                                      int variants_per_action, std::uint64_t master_seed,
                                      const std::string& out_dir, int jobs = 1);

} // namespace esec
