#pragma once

#include "esec/geometry.hpp"
#include "esec/relations.hpp"
#include "esec/scene.hpp"

#include <set>

namespace esec {

/// Thresholds for the per-frame relation predicates, meters.
struct StaticConfig {
    double eps_touch = 0.005;    // face-gap tolerance for touching
    double null_radius = 0.10;   // box separation beyond which the static relation is Null (O)
    double around_radius = 0.10; // lateral radius pi inside which R/L/F/Ba compose into Ar
    bool use_point_sets = false; // touching from nearest point-pair distance when both objects carry points
};

/// Touching decision from per-axis face gaps; overlap and enclosure count as
/// touching. With use_point_sets and point clouds on both objects, the
/// nearest-neighbor distance between the sets decides instead.
Tn touching(const ObjectState& a, const ObjectState& b, const StaticConfig& cfg);
Tn touching_boxes(const Aabb& a, const Aabb& b, const StaticConfig& cfg);

/// All static relations whose defining inequalities hold for the ordered
/// pair (a, b), before shadow tie-breaking and Around composition.
std::set<Ssr> ssr_candidates(const Aabb& a, const Aabb& b);

/// Projected face-intersection area along the axis of the candidate
/// relation. Throws std::invalid_argument for relations without a facing
/// surface (In/Sa and non-directional values).
double shadow_area(const Aabb& a, const Aabb& b, Ssr relation);

/// The single main static relation of the ordered pair: Null beyond
/// null_radius, otherwise the biggest-shadow candidate, with the lateral
/// winners composed into Ar within around_radius and the touching variants
/// To/Bo/ArT applied when tn == T.
Ssr main_ssr(const ObjectState& a, const ObjectState& b, Tn tn, const StaticConfig& cfg);
Ssr main_ssr_boxes(const Aabb& a, const Aabb& b, Tn tn, const StaticConfig& cfg);

/// Ternary "in between" diagnostic: k lies in the between-space of a and b.
bool between(const Aabb& a, const Aabb& k, const Aabb& b);

} // namespace esec
