#pragma once

#include <stdexcept>
#include <vector>

#include "constcurve/vec3.hpp"

namespace constcurve {

struct ParallelPlanes : std::runtime_error {
    ParallelPlanes() : std::runtime_error("planes are parallel, pencil axis undefined") {}
};
struct NearIdentity : std::runtime_error {
    NearIdentity() : std::runtime_error("rotation angle too small, screw axis undefined") {}
};

/// Right-handed orthonormal frame (tangent, principal normal, binormal).
struct Frame {
    Vec3 e1{1, 0, 0};
    Vec3 e2{0, 1, 0};
    Vec3 e3{0, 0, 1};

    static Frame world() { return {}; }

    /// Max deviation from orthonormality: |ei.ej - delta_ij| over all pairs.
    double orthonormality_residual() const;

    /// Gram-Schmidt in the order e1, e2, e3.
    Frame orthonormalized() const;

    Mat3 as_matrix() const { return Mat3::from_columns(e1, e2, e3); }
};

struct Line {
    Vec3 point;
    Vec3 direction;  // unit

    Line(const Vec3& p, const Vec3& dir) : point(p), direction(dir.normalized()) {}
};

struct Plane {
    Vec3 point;
    Vec3 normal;  // unit

    Plane(const Vec3& p, const Vec3& n) : point(p), normal(n.normalized()) {}

    double signed_distance(const Vec3& q) const { return (q - point).dot(normal); }
    Vec3 reflect_point(const Vec3& q) const { return q - 2.0 * signed_distance(q) * normal; }
    Vec3 reflect_vector(const Vec3& v) const { return v - 2.0 * v.dot(normal) * normal; }
};

/// x -> R x + t with R a proper rotation.
struct RigidMotion {
    Mat3 rotation;
    Vec3 translation;

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
    Vec3 apply_vector(const Vec3& v) const { return rotation * v; }
    Frame apply_frame(const Frame& f) const {
        return {rotation * f.e1, rotation * f.e2, rotation * f.e3};
    }
};

/// Point rotated by pi about a line.
Vec3 rotate_point_180(const Vec3& p, const Line& axis);
Vec3 rotate_vector_180(const Vec3& v, const Line& axis);

struct LineLineGeometry {
    double distance = 0;
    double angle = 0;  // unsigned acute angle between directions, [0, pi/2]
    Vec3 closest_point_a;
    Vec3 closest_point_b;
    bool parallel = false;  // degenerate: closest points are one of infinitely many foot pairs
};

LineLineGeometry line_line_geometry(const Line& a, const Line& b);

struct PlanePencil {
    Line axis;
    double dihedral_angle = 0;  // angle between the stored normals, in (0, pi)
};

/// Intersection line of two non-parallel planes. Throws ParallelPlanes.
PlanePencil plane_pencil(const Plane& a, const Plane& b);

/// The unique rigid motion taking (p0, f0) to (p1, f1).
RigidMotion motion_between_frames(const Vec3& p0, const Frame& f0,
                                  const Vec3& p1, const Frame& f1);

struct ScrewDecomposition {
    Line axis;
    double angle = 0;  // canonicalized to (0, pi]
    double slide = 0;  // translation along axis.direction, signed
};

/// Decompose a rigid motion into rotation about an axis plus slide along it.
/// Throws NearIdentity when |angle| <= 1e-7.
ScrewDecomposition screw_decompose(const RigidMotion& m);

/// Build the screw motion with the given parameters (inverse of screw_decompose).
RigidMotion screw_compose(const Line& axis, double angle, double slide);

struct CommonPoint {
    Vec3 point;           // least-squares point minimizing summed squared line distances
    double max_residual;  // max distance from the point to any of the lines
};

/// Least-squares "all lines through one point" fit. Needs >= 2 non-parallel lines.
CommonPoint lines_common_point(const std::vector<Line>& lines);

}  // namespace constcurve
