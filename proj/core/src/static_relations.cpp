#include "esec/static_relations.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace esec {

namespace {

bool disjoint_on(const Aabb& a, const Aabb& b, std::size_t axis) {
    return a.min[axis] > b.max[axis] || a.max[axis] < b.min[axis];
}

double nearest_point_distance(const std::vector<Vec3>& pa, const std::vector<Vec3>& pb) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pa) {
        for (const auto& q : pb) {
            const double dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
            best = std::min(best, dx * dx + dy * dy + dz * dz);
        }
    }
    return std::sqrt(best);
}

} // namespace

Tn touching_boxes(const Aabb& a, const Aabb& b, const StaticConfig& cfg) {
    for (std::size_t k = 0; k < 3; ++k) {
        const double gap = std::max({0.0, a.min[k] - b.max[k], b.min[k] - a.max[k]});
        if (gap > cfg.eps_touch) return Tn::N;
    }
    return Tn::T;
}

Tn touching(const ObjectState& a, const ObjectState& b, const StaticConfig& cfg) {
    if (cfg.use_point_sets && a.point_set && b.point_set && !a.point_set->empty() && !b.point_set->empty()) {
        return nearest_point_distance(*a.point_set, *b.point_set) <= cfg.eps_touch ? Tn::T : Tn::N;
    }
    return touching_boxes(a.aabb, b.aabb, cfg);
}

std::set<Ssr> ssr_candidates(const Aabb& a, const Aabb& b) {
    std::set<Ssr> out;

    // Containment first: it is incompatible with every directional relation.
    if (b.contains(a)) out.insert(Ssr::In);
    if (a.contains(b)) out.insert(Ssr::Sa);
    if (!out.empty()) return out;

    // Above/Below on y (image axis: smaller y is higher), excluded when the
    // boxes do not overlap in x or in z.
    const bool xz_overlap = !disjoint_on(a, b, 0) && !disjoint_on(a, b, 2);
    if (xz_overlap) {
        if (a.min.y < b.min.y && a.max.y < b.max.y) out.insert(Ssr::Ab);
        if (a.min.y > b.min.y && a.max.y > b.max.y) out.insert(Ssr::Be);
    }

    // Right/Left on x, excluded without y and z overlap.
    const bool yz_overlap = !disjoint_on(a, b, 1) && !disjoint_on(a, b, 2);
    if (yz_overlap) {
        if (a.min.x > b.min.x && a.max.x > b.max.x) out.insert(Ssr::R);
        if (a.min.x < b.min.x && a.max.x < b.max.x) out.insert(Ssr::L);
    }

    // Front/Back on z, excluded without x and y overlap.
    const bool xy_overlap = !disjoint_on(a, b, 0) && !disjoint_on(a, b, 1);
    if (xy_overlap) {
        if (a.min.z < b.min.z && a.max.z < b.max.z) out.insert(Ssr::F);
        if (a.min.z > b.min.z && a.max.z > b.max.z) out.insert(Ssr::Ba);
    }

    return out;
}

double shadow_area(const Aabb& a, const Aabb& b, Ssr relation) {
    switch (relation) {
        case Ssr::Ab:
        case Ssr::Be:
            return axis_overlap(a, b, 0) * axis_overlap(a, b, 2);
        case Ssr::R:
        case Ssr::L:
            return axis_overlap(a, b, 1) * axis_overlap(a, b, 2);
        case Ssr::F:
        case Ssr::Ba:
            return axis_overlap(a, b, 0) * axis_overlap(a, b, 1);
        default:
            throw std::invalid_argument("no facing surface for relation " + to_symbol(relation));
    }
}

namespace {

// Ties between equal shadows resolve by this fixed precedence.
int precedence(Ssr r) {
    switch (r) {
        case Ssr::Ab: return 0;
        case Ssr::Be: return 1;
        case Ssr::R: return 2;
        case Ssr::L: return 3;
        case Ssr::F: return 4;
        case Ssr::Ba: return 5;
        default: return 6;
    }
}

} // namespace

Ssr main_ssr_boxes(const Aabb& a, const Aabb& b, Tn tn, const StaticConfig& cfg) {
    const auto cands = ssr_candidates(a, b);

    const bool contained = cands.contains(Ssr::In) || cands.contains(Ssr::Sa);
    if (!contained && gap_distance(a, b) > cfg.null_radius) return Ssr::O;

    if (cands.contains(Ssr::In)) return Ssr::In;
    if (cands.contains(Ssr::Sa)) return Ssr::Sa;
    if (cands.empty()) return Ssr::O;

    Ssr winner = Ssr::O;
    double best = -1.0;
    for (Ssr r : cands) {
        const double s = shadow_area(a, b, r);
        if (s > best || (s == best && precedence(r) < precedence(winner))) {
            best = s;
            winner = r;
        }
    }

    const bool lateral = winner == Ssr::R || winner == Ssr::L || winner == Ssr::F || winner == Ssr::Ba;
    if (lateral && lateral_gap(a, b) <= cfg.around_radius) winner = Ssr::Ar;

    if (tn == Tn::T) {
        if (winner == Ssr::Ab) return Ssr::To;
        if (winner == Ssr::Be) return Ssr::Bo;
        if (winner == Ssr::Ar) return Ssr::ArT;
    }
    return winner;
}

Ssr main_ssr(const ObjectState& a, const ObjectState& b, Tn tn, const StaticConfig& cfg) {
    return main_ssr_boxes(a.aabb, b.aabb, tn, cfg);
}

bool between(const Aabb& a, const Aabb& k, const Aabb& b) {
    return k.min.x >= std::min(a.max.x, b.max.x) &&
           k.max.x <= std::max(a.min.x, b.min.x) &&
           k.min.y >= std::max(a.min.y, b.min.y) &&
           k.max.y <= std::min(a.max.y, b.max.y) &&
           k.min.z >= std::max(a.min.z, b.min.z) &&
           k.max.z <= std::min(a.max.z, b.max.z);
}

} // namespace esec
