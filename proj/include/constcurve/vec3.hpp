#pragma once

#include <cmath>
#include <stdexcept>

namespace constcurve {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double a) const { return {x * a, y * a, z * a}; }
    Vec3 operator/(double a) const { return {x / a, y / a, z / a}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double a) { x *= a; y *= a; z *= a; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double squared_norm() const { return dot(*this); }
    double norm() const { return std::sqrt(squared_norm()); }

    Vec3 normalized() const {
        double n = norm();
        if (n == 0.0) throw std::runtime_error("Vec3::normalized: zero vector");
        return *this / n;
    }

    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Vec3 operator*(double a, const Vec3& v) { return v * a; }

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

/// Unsigned angle between two nonzero vectors, in [0, pi].
inline double angle_between(const Vec3& a, const Vec3& b) {
    // atan2 form is well conditioned near 0 and pi, unlike acos of the dot.
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

/// Row-major 3x3 matrix.
struct Mat3 {
    double m[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return {}; }

    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        Mat3 r;
        r.m[0] = c0.x; r.m[1] = c1.x; r.m[2] = c2.x;
        r.m[3] = c0.y; r.m[4] = c1.y; r.m[5] = c2.y;
        r.m[6] = c0.z; r.m[7] = c1.z; r.m[8] = c2.z;
        return r;
    }

    /// Rodrigues rotation by `angle` about unit `axis`.
    static Mat3 rotation(const Vec3& axis, double angle) {
        const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
        const double ux = axis.x, uy = axis.y, uz = axis.z;
        Mat3 r;
        r.m[0] = c + ux * ux * t;      r.m[1] = ux * uy * t - uz * s; r.m[2] = ux * uz * t + uy * s;
        r.m[3] = uy * ux * t + uz * s; r.m[4] = c + uy * uy * t;      r.m[5] = uy * uz * t - ux * s;
        r.m[6] = uz * ux * t - uy * s; r.m[7] = uz * uy * t + ux * s; r.m[8] = c + uz * uz * t;
        return r;
    }

    Vec3 col(int j) const { return {m[j], m[3 + j], m[6 + j]}; }
    Vec3 row(int i) const { return {m[3 * i], m[3 * i + 1], m[3 * i + 2]}; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += m[3 * i + k] * o.m[3 * k + j];
                r.m[3 * i + j] = s;
            }
        return r;
    }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[3 * i + j] = m[3 * j + i];
        return r;
    }

    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7])
             - m[1] * (m[3] * m[8] - m[5] * m[6])
             + m[2] * (m[3] * m[7] - m[4] * m[6]);
    }

    double max_abs_diff(const Mat3& o) const {
        double d = 0;
        for (int i = 0; i < 9; ++i) d = std::max(d, std::abs(m[i] - o.m[i]));
        return d;
    }
};

/// Solve A x = b for a 3x3 system by Gaussian elimination with partial pivoting.
Vec3 solve3(const Mat3& a, const Vec3& b);

inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
    return a.dot(b.cross(c));
}

}  // namespace constcurve
