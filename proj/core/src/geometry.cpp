#include "esec/geometry.hpp"

#include <algorithm>

namespace esec {

bool Aabb::valid() const {
    for (std::size_t k = 0; k < 3; ++k) {
        if (!(min[k] <= max[k])) return false;
        if (!std::isfinite(min[k]) || !std::isfinite(max[k])) return false;
    }
    return true;
}

AabbMetrics aabb_metrics(const Aabb& a, const Aabb& b) {
    AabbMetrics m;
    m.center_a = a.center();
    m.center_b = b.center();
    m.center_distance = distance(m.center_a, m.center_b);
    for (std::size_t k = 0; k < 3; ++k) {
        m.face_gap[k] = std::max({0.0, a.min[k] - b.max[k], b.min[k] - a.max[k]});
    }
    return m;
}

double axis_overlap(const Aabb& a, const Aabb& b, std::size_t axis) {
    const double lo = std::max(a.min[axis], b.min[axis]);
    const double hi = std::min(a.max[axis], b.max[axis]);
    return std::max(0.0, hi - lo);
}

double gap_distance(const Aabb& a, const Aabb& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        const double g = std::max({0.0, a.min[k] - b.max[k], b.min[k] - a.max[k]});
        s += g * g;
    }
    return std::sqrt(s);
}

double lateral_gap(const Aabb& a, const Aabb& b) {
    const double gx = std::max({0.0, a.min.x - b.max.x, b.min.x - a.max.x});
    const double gz = std::max({0.0, a.min.z - b.max.z, b.min.z - a.max.z});
    return std::sqrt(gx * gx + gz * gz);
}

} // namespace esec
