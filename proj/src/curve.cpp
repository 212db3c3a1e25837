#include "constcurve/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace constcurve {

void SampledCurve::validate() const {
    if (samples.size() < 4)
        throw std::runtime_error("SampledCurve: fewer than 4 samples");
    if (!(step > 0))
        throw std::runtime_error("SampledCurve: step must be positive");
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const double d = distance(samples[i], samples[i + 1]);
        if (std::abs(d - step) > 0.02 * step)
            throw std::runtime_error("SampledCurve: sample spacing deviates from step by more than 2%");
    }
    if (!frames.empty() && frames.size() != samples.size())
        throw std::runtime_error("SampledCurve: frames/samples size mismatch");
}

DiscreteInvariants discrete_invariants(const SampledCurve& curve) {
    const auto& p = curve.samples;
    const std::size_t n = p.size();
    if (n < 5) throw std::runtime_error("discrete_invariants: need at least 5 samples");

    DiscreteInvariants out;
    out.kappa.reserve(n - 2);
    out.tau.reserve(n - 3);

    auto collinear = [](const Vec3& v1, const Vec3& v2) {
        return v1.cross(v2).norm() <= 1e-12 * v1.norm() * v2.norm();
    };

    // Circumscribed circle curvature of samples (i-1, i, i+1).
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Vec3 a = p[i] - p[i - 1];
        const Vec3 b = p[i + 1] - p[i];
        const Vec3 c = p[i + 1] - p[i - 1];
        if (collinear(a, b)) {
            out.kappa.push_back(0.0);
            continue;
        }
        out.kappa.push_back(2.0 * a.cross(b).norm() / (a.norm() * b.norm() * c.norm()));
    }

    // Signed tetrahedron volume of samples (i-1 .. i+2), normalized by the
    // local step and the curvature estimate. det(v1,v2,v3) = h^6 k^2 tau_cl
    // to leading order; the sign is flipped to the e3' = +tau e2 convention.
    for (std::size_t i = 1; i + 2 < n; ++i) {
        const Vec3 v1 = p[i] - p[i - 1];
        const Vec3 v2 = p[i + 1] - p[i];
        const Vec3 v3 = p[i + 2] - p[i + 1];
        const double k = out.kappa[i - 1];
        if (k == 0.0 || collinear(v1, v2) || collinear(v2, v3)) {
            out.tau.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        const double h = (v1.norm() + v2.norm() + v3.norm()) / 3.0;
        const double h6 = h * h * h * h * h * h;
        out.tau.push_back(-det3(v1, v2, v3) / (h6 * k * k));
    }
    return out;
}

ClosureReport closure_report(const SampledCurve& curve) {
    const auto& p = curve.samples;
    if (p.size() < 2) throw std::runtime_error("closure_report: need at least 2 samples");
    ClosureReport r;
    r.position_gap = distance(p.back(), p.front());
    const Vec3 t0 = p[1] - p[0];
    const Vec3 t1 = p[p.size() - 1] - p[p.size() - 2];
    r.tangent_gap = angle_between(t0, t1);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) r.length += distance(p[i], p[i + 1]);
    return r;
}

SampledCurve reflect_curve(const SampledCurve& curve, const Plane& mirror) {
    SampledCurve out;
    out.step = curve.step;
    out.meta = curve.meta;
    out.samples.reserve(curve.samples.size());
    for (const Vec3& q : curve.samples) out.samples.push_back(mirror.reflect_point(q));
    // Frames are dropped: a reflection reverses handedness.
    return out;
}

SampledCurve rotate_curve_180(const SampledCurve& curve, const Line& axis) {
    SampledCurve out;
    out.step = curve.step;
    out.meta = curve.meta;
    out.samples.reserve(curve.samples.size());
    for (const Vec3& q : curve.samples) out.samples.push_back(rotate_point_180(q, axis));
    out.frames.reserve(curve.frames.size());
    for (const Frame& f : curve.frames)
        out.frames.push_back({rotate_vector_180(f.e1, axis), rotate_vector_180(f.e2, axis),
                              rotate_vector_180(f.e3, axis)});
    return out;
}

void PathTable::append_reflected(const Plane& mirror) {
    const std::size_t n = size();
    if (n < 2) throw std::runtime_error("PathTable::append_reflected: empty table");
    const double s_end = s.back();
    // Image traversed backwards: c2(s') = M(c(2 s_end - s')), tangent -M(t).
    for (std::size_t j = n - 1; j-- > 0;) {
        push(2.0 * s_end - s[j], mirror.reflect_point(p[j]), -mirror.reflect_vector(t[j]));
    }
}

void PathTable::append_rotated_180(const Line& axis) {
    const std::size_t n = size();
    if (n < 2) throw std::runtime_error("PathTable::append_rotated_180: empty table");
    const double s_end = s.back();
    for (std::size_t j = n - 1; j-- > 0;) {
        push(2.0 * s_end - s[j], rotate_point_180(p[j], axis), -rotate_vector_180(t[j], axis));
    }
}

namespace {

struct HermiteCell {
    std::size_t i;
    double theta;
    double h;
};

HermiteCell locate(const std::vector<double>& s, double q) {
    const double lo = s.front(), hi = s.back();
    if (q <= lo) return {0, 0.0, s[1] - s[0]};
    if (q >= hi) return {s.size() - 2, 1.0, s[s.size() - 1] - s[s.size() - 2]};
    auto it = std::upper_bound(s.begin(), s.end(), q);
    std::size_t i = static_cast<std::size_t>(it - s.begin()) - 1;
    i = std::min(i, s.size() - 2);
    const double h = s[i + 1] - s[i];
    const double theta = h > 0 ? (q - s[i]) / h : 0.0;
    return {i, theta, h};
}

}  // namespace

Vec3 PathTable::eval(double s_query) const {
    const auto [i, th, h] = locate(s, s_query);
    const double t2 = th * th, t3 = t2 * th;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + th;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * p[i] + (h10 * h) * t[i] + h01 * p[i + 1] + (h11 * h) * t[i + 1];
}

Vec3 PathTable::eval_tangent(double s_query) const {
    const auto [i, th, h] = locate(s, s_query);
    const double t2 = th * th;
    const double d00 = (6 * t2 - 6 * th) / h;
    const double d10 = 3 * t2 - 4 * th + 1;
    const double d01 = (-6 * t2 + 6 * th) / h;
    const double d11 = 3 * t2 - 2 * th;
    return d00 * p[i] + d10 * t[i] + d01 * p[i + 1] + d11 * t[i + 1];
}

SampledCurve resample_uniform(const PathTable& table, double requested_step) {
    if (table.size() < 2) throw std::runtime_error("resample_uniform: empty table");
    if (!(requested_step > 0)) throw std::runtime_error("resample_uniform: step must be positive");
    const double length = table.length() - table.s.front();
    const std::size_t n = std::max<std::size_t>(3, static_cast<std::size_t>(std::llround(length / requested_step)));
    const double h = length / static_cast<double>(n);

    SampledCurve out;
    out.step = h;
    out.samples.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double sk = table.s.front() + (static_cast<double>(k) * length) / static_cast<double>(n);
        out.samples.push_back(table.eval(sk));
    }
    return out;
}

}  // namespace constcurve
