#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "constcurve/geometry.hpp"
#include "constcurve/vec3.hpp"

namespace constcurve {

struct CurveMeta {
    std::string construction;
    std::map<std::string, double> params;
};

/// Arclength-parametrized polyline, the universal output type.
/// Closed curves repeat the first sample at the end.
struct SampledCurve {
    std::vector<Vec3> samples;
    double step = 0.0;
    std::vector<Frame> frames;  // empty, or one frame per sample
    CurveMeta meta;

    std::size_t size() const { return samples.size(); }

    /// Checks the type invariants: >= 4 samples, consecutive distances
    /// within 2% of step. Throws on violation.
    void validate() const;
};

struct ClosureReport {
    double position_gap = 0;  // |c(L) - c(0)|
    double tangent_gap = 0;   // angle between end and start tangents, radians
    double length = 0;        // sum of segment lengths
};

struct DegenerateSamples : std::runtime_error {
    DegenerateSamples() : std::runtime_error("three consecutive samples are collinear") {}
};

/// Discrete curvature/torsion estimates. kappa[k] belongs to sample k+1
/// (circumscribed circle of samples k..k+2); tau[k] sits between samples
/// k+1 and k+2 (signed volume of samples k..k+3). Boundary indices are
/// omitted. Collinear triples yield kappa 0 and NaN torsion there.
///
/// Torsion sign follows the frame convention e2' = -kappa e1 - tau e3,
/// e3' = +tau e2 (a right-handed helix (cos t, sin t, t) has tau = -1/2).
struct DiscreteInvariants {
    std::vector<double> kappa;
    std::vector<double> tau;
};

DiscreteInvariants discrete_invariants(const SampledCurve& curve);

ClosureReport closure_report(const SampledCurve& curve);

SampledCurve reflect_curve(const SampledCurve& curve, const Plane& mirror);
SampledCurve rotate_curve_180(const SampledCurve& curve, const Line& axis);

/// Arc of an arclength-parametrized curve: cumulative arclength, points,
/// unit tangents. The assembly intermediate all constructions share.
struct PathTable {
    std::vector<double> s;
    std::vector<Vec3> p;
    std::vector<Vec3> t;

    std::size_t size() const { return s.size(); }
    double length() const { return s.empty() ? 0.0 : s.back(); }
    void push(double s_, const Vec3& p_, const Vec3& t_) {
        s.push_back(s_);
        p.push_back(p_);
        t.push_back(t_);
    }

    /// Appends the mirror image of the table so far, traversed backwards,
    /// continuing the arclength parameter. The junction sample is not
    /// duplicated. Extends a curve across a plane of reflectional symmetry.
    void append_reflected(const Plane& mirror);

    /// Same for a 180-degree rotation about a line.
    void append_rotated_180(const Line& axis);

    /// Cubic Hermite interpolation of the position at arclength s*.
    Vec3 eval(double s_query) const;
    Vec3 eval_tangent(double s_query) const;
};

/// Resample to uniform arclength spacing close to `requested_step`
/// (the step is adjusted so an integer number of intervals covers the
/// total length exactly). Positions are cubic Hermite interpolants of
/// the table, so resampled points stay on the underlying smooth curve
/// to fourth order in the table spacing.
SampledCurve resample_uniform(const PathTable& table, double requested_step);

}  // namespace constcurve
