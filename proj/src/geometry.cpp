#include "constcurve/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace constcurve {

Vec3 solve3(const Mat3& a, const Vec3& b) {
    double aug[3][4] = {
        {a.m[0], a.m[1], a.m[2], b.x},
        {a.m[3], a.m[4], a.m[5], b.y},
        {a.m[6], a.m[7], a.m[8], b.z},
    };
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
        if (std::abs(aug[piv][col]) < 1e-300)
            throw std::runtime_error("solve3: singular matrix");
        if (piv != col) std::swap(aug[piv], aug[col]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            double f = aug[r][col] / aug[col][col];
            for (int c = col; c < 4; ++c) aug[r][c] -= f * aug[col][c];
        }
    }
    return {aug[0][3] / aug[0][0], aug[1][3] / aug[1][1], aug[2][3] / aug[2][2]};
}

double Frame::orthonormality_residual() const {
    const Vec3* e[3] = {&e1, &e2, &e3};
    double r = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            double target = (i == j) ? 1.0 : 0.0;
            r = std::max(r, std::abs(e[i]->dot(*e[j]) - target));
        }
    return r;
}

Frame Frame::orthonormalized() const {
    Frame f;
    f.e1 = e1.normalized();
    f.e2 = (e2 - e2.dot(f.e1) * f.e1).normalized();
    f.e3 = (e3 - e3.dot(f.e1) * f.e1 - e3.dot(f.e2) * f.e2).normalized();
    return f;
}

Vec3 rotate_point_180(const Vec3& p, const Line& axis) {
    Vec3 w = p - axis.point;
    return axis.point + 2.0 * w.dot(axis.direction) * axis.direction - w;
}

Vec3 rotate_vector_180(const Vec3& v, const Line& axis) {
    return 2.0 * v.dot(axis.direction) * axis.direction - v;
}

LineLineGeometry line_line_geometry(const Line& a, const Line& b) {
    LineLineGeometry out;
    const Vec3 d1 = a.direction, d2 = b.direction;
    const Vec3 w0 = a.point - b.point;
    const double bb = d1.dot(d2);
    const double denom = 1.0 - bb * bb;  // = |d1 x d2|^2 for unit directions

    out.angle = std::min(angle_between(d1, d2), angle_between(d1, -d2));

    if (denom < 1e-14) {
        // Parallel: any perpendicular foot pair realizes the offset distance.
        out.parallel = true;
        out.closest_point_a = a.point;
        out.closest_point_b = b.point + d2 * w0.dot(d2);
        out.distance = (out.closest_point_a - out.closest_point_b).norm();
        return out;
    }
    const double d = d1.dot(w0), e = d2.dot(w0);
    const double t = (bb * e - d) / denom;
    const double u = (e - bb * d) / denom;
    out.closest_point_a = a.point + d1 * t;
    out.closest_point_b = b.point + d2 * u;
    out.distance = (out.closest_point_a - out.closest_point_b).norm();
    return out;
}

PlanePencil plane_pencil(const Plane& a, const Plane& b) {
    const Vec3 cr = a.normal.cross(b.normal);
    if (cr.norm() <= 1e-9) throw ParallelPlanes();
    const Vec3 dir = cr.normalized();

    // Point on both planes: combination of the two normals.
    const double da = a.normal.dot(a.point);
    const double db = b.normal.dot(b.point);
    const double nn = a.normal.dot(b.normal);
    const double denom = 1.0 - nn * nn;
    const double ca = (da - db * nn) / denom;
    const double cb = (db - da * nn) / denom;
    const Vec3 p = ca * a.normal + cb * b.normal;

    PlanePencil out{Line(p, dir), angle_between(a.normal, b.normal)};
    return out;
}

RigidMotion motion_between_frames(const Vec3& p0, const Frame& f0,
                                  const Vec3& p1, const Frame& f1) {
    const Mat3 r = f1.as_matrix() * f0.as_matrix().transposed();
    return {r, p1 - r * p0};
}

ScrewDecomposition screw_decompose(const RigidMotion& m) {
    const Mat3& r = m.rotation;
    // Skew part gives axis * 2 sin(angle); trace gives 1 + 2 cos(angle).
    Vec3 skew{r.m[7] - r.m[5], r.m[2] - r.m[6], r.m[3] - r.m[1]};
    const double sin2 = skew.norm();                    // 2 sin(angle)
    const double cos2 = r.m[0] + r.m[4] + r.m[8] - 1.0; // 2 cos(angle)
    double angle = std::atan2(sin2, cos2);              // in [0, pi]
    if (angle <= 1e-7) throw NearIdentity();

    Vec3 dir;
    if (sin2 > 1e-6) {
        dir = skew / sin2;
    } else {
        // angle near pi: get the axis from the symmetric part, R + I = 2 d d^T + O(pi - angle).
        Mat3 s = r;
        s.m[0] += 1.0; s.m[4] += 1.0; s.m[8] += 1.0;
        int best = 0;
        if (s.m[4] > s.m[3 * best + best]) best = 1;
        if (s.m[8] > s.m[3 * best + best]) best = 2;
        dir = s.col(best).normalized();
        if (sin2 > 0 && dir.dot(skew) < 0) dir = -dir;
    }

    const double slide = m.translation.dot(dir);
    const Vec3 t_perp = m.translation - slide * dir;

    // Solve (I - R) q = t_perp in the plane orthogonal to dir:
    // q = (t_perp + cot(angle/2) dir x t_perp) / 2.
    const double cot_half = cos2 > -2.0 + 1e-15 ? (sin2 / (2.0 - cos2)) : 0.0;
    const Vec3 q = 0.5 * (t_perp + cot_half * dir.cross(t_perp));

    return {Line(q, dir), angle, slide};
}

RigidMotion screw_compose(const Line& axis, double angle, double slide) {
    const Mat3 r = Mat3::rotation(axis.direction, angle);
    const Vec3 t = axis.point - r * axis.point + slide * axis.direction;
    return {r, t};
}

CommonPoint lines_common_point(const std::vector<Line>& lines) {
    if (lines.size() < 2)
        throw std::runtime_error("lines_common_point: need at least two lines");
    // Minimize sum_i |(I - d_i d_i^T)(p - q_i)|^2  =>  [sum (I - d d^T)] p = sum (I - d d^T) q.
    Mat3 a{};
    for (int i = 0; i < 9; ++i) a.m[i] = 0;
    Vec3 rhs{0, 0, 0};
    for (const Line& ln : lines) {
        const Vec3 d = ln.direction;
        Mat3 proj;
        proj.m[0] = 1 - d.x * d.x; proj.m[1] = -d.x * d.y;    proj.m[2] = -d.x * d.z;
        proj.m[3] = -d.y * d.x;    proj.m[4] = 1 - d.y * d.y; proj.m[5] = -d.y * d.z;
        proj.m[6] = -d.z * d.x;    proj.m[7] = -d.z * d.y;    proj.m[8] = 1 - d.z * d.z;
        for (int i = 0; i < 9; ++i) a.m[i] += proj.m[i];
        rhs += proj * ln.point;
    }
    const Vec3 p = solve3(a, rhs);
    double max_res = 0;
    for (const Line& ln : lines) {
        const Vec3 w = p - ln.point;
        max_res = std::max(max_res, (w - w.dot(ln.direction) * ln.direction).norm());
    }
    return {p, max_res};
}

}  // namespace constcurve
