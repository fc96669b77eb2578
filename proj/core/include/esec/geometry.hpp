#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace esec {

/// 3-component vector, meters. Camera-frame convention throughout the
/// library: x = right/left, y = above/below with smaller y meaning higher
/// (image-style axis), z = front/back.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double& operator[](std::size_t k) { return k == 0 ? x : (k == 1 ? y : z); }
    double operator[](std::size_t k) const { return k == 0 ? x : (k == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    bool operator==(const Vec3& o) const = default;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

/// Axis-aligned bounding box given by its min/max corners.
/// Valid boxes satisfy min[k] <= max[k] with finite coordinates.
struct Aabb {
    Vec3 min;
    Vec3 max;

    bool operator==(const Aabb& o) const = default;

    Vec3 center() const { return {(min.x + max.x) * 0.5, (min.y + max.y) * 0.5, (min.z + max.z) * 0.5}; }
    Vec3 extent() const { return max - min; }

    bool valid() const;

    /// True when `inner` lies entirely within this box (non-strict).
    bool contains(const Aabb& inner) const {
        return inner.min.x >= min.x && inner.max.x <= max.x &&
               inner.min.y >= min.y && inner.max.y <= max.y &&
               inner.min.z >= min.z && inner.max.z <= max.z;
    }

    Aabb translated(const Vec3& d) const { return {min + d, max + d}; }
};

/// Pairwise measurements between two boxes.
struct AabbMetrics {
    Vec3 center_a;
    Vec3 center_b;
    double center_distance = 0.0;       // Euclidean distance of the two centers
    std::array<double, 3> face_gap{};   // per-axis separation, 0 when overlapping
};

AabbMetrics aabb_metrics(const Aabb& a, const Aabb& b);

/// Per-axis interval overlap length, 0 when disjoint.
double axis_overlap(const Aabb& a, const Aabb& b, std::size_t axis);

/// Euclidean separation of the two boxes (distance between closest points);
/// 0 when they intersect.
double gap_distance(const Aabb& a, const Aabb& b);

/// Separation restricted to the horizontal x-z plane.
double lateral_gap(const Aabb& a, const Aabb& b);

} // namespace esec
