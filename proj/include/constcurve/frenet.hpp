#pragma once

#include <stdexcept>
#include <vector>

#include "constcurve/curve.hpp"
#include "constcurve/ode.hpp"

namespace constcurve {

struct NotSkewSymmetric : std::runtime_error {
    NotSkewSymmetric()
        : std::runtime_error("torsion is not skew symmetric about n*pi (needs b = 0)") {}
};
struct NotSymmetric : std::runtime_error {
    NotSymmetric()
        : std::runtime_error("torsion is not symmetric about pi/2 + n*pi (needs d = 0)") {}
};
struct DegenerateSymmetry : std::runtime_error {
    explicit DegenerateSymmetry(const char* what) : std::runtime_error(what) {}
};
struct ClosureNotReached : std::runtime_error {
    ClosureNotReached()
        : std::runtime_error("curve did not close within the multiple-of-pi search cap") {}
};

/// tau(s) = b + c sin(s) + d sin(2s) + e sin(3s), period 2 pi.
struct TorsionPoly {
    double b = 0, c = 0, d = 0, e = 0;
};

double torsion_eval(const TorsionPoly& t, double s);

struct FrenetState {
    Vec3 position;
    Frame frame;  // e1 tangent, e2 principal normal, e3 binormal
};

/// 12-dimensional integration state: position, e1, e2, e3.
using FrenetOdeState = State<12>;

FrenetOdeState pack_frenet(const FrenetState& st);
FrenetState unpack_frenet(const FrenetOdeState& y);

/// The frame system
///   e1' = kappa e2,  e2' = -kappa e1 - tau e3,  e3' = tau e2,  c' = e1.
/// Note the sign convention: e2' carries -tau e3 and e3' carries +tau e2.
FrenetOdeState frenet_rhs(const FrenetOdeState& y, double s, double kappa, const TorsionPoly& t);

struct FrenetSolution {
    SampledCurve curve;  // frames stored at every sample; step divides pi/2
    double kappa = 0;
    TorsionPoly torsion;

    double s_end() const { return curve.step * static_cast<double>(curve.samples.size() - 1); }

    /// State at a grid node; s must lie on the sample grid (within 1e-9).
    FrenetState at(double s) const;
};

/// RK4 on the 12-dimensional system from the origin with the world frame,
/// Gram-Schmidt re-orthonormalization after every step. The step is
/// adjusted so the grid hits every multiple of pi/2 up to s_end exactly.
FrenetSolution integrate_frenet(double kappa, const TorsionPoly& t, double s_end,
                                const IntegratorConfig& config);

/// Normal planes at s = n pi (reflection symmetry planes of the curve when
/// tau is skew symmetric, i.e. b = 0).
std::vector<Plane> normal_symmetry_planes(const FrenetSolution& sol);

struct PlaneFamilyAngle {
    Line axis;                 // pencil axis of the planes at s = 0 and pi
    double angle;              // dihedral angle
    double axis_consistency;   // max distance from the axis to the further planes
};

PlaneFamilyAngle plane_family_angle(const FrenetSolution& sol);

/// Lines through c(s1) with direction e2(s1) at s1 = pi/2 + n pi
/// (180-degree rotation symmetry axes when tau is symmetric, i.e. d = 0).
std::vector<Line> rotation_symmetry_normals(const FrenetSolution& sol);

/// Common-perpendicular distance between the symmetry normals at pi/2 and
/// 3 pi/2, signed against e3(pi/2) so bisection in b has a sign change.
double normals_gap(double kappa, double b, double c, double e, const IntegratorConfig& config);

/// Bisects normals_gap over [b_lo, b_hi] to |gap| < 1e-10, then verifies
/// that the first four symmetry normals pass within 1e-7 of one point.
double adjust_b(double kappa, double c, double e, double b_lo, double b_hi,
                const IntegratorConfig& config);

/// Dihedral angle between neighboring symmetry planes (b = 0 family).
double symmetry_angle_planes(const FrenetSolution& sol);

/// Angle between the symmetry normals at pi/2 and 3 pi/2, in (0, pi).
/// Assumes b already adjusted so the normals are concurrent.
double symmetry_angle_normals(double kappa, double b, double c, double e,
                              const IntegratorConfig& config);

enum class PlanesFree { c, kappa };

/// Bisects the free parameter until the plane dihedral angle hits
/// target_angle (a rational multiple of pi) within 1e-9.
double tune_planes(PlanesFree which, double kappa, TorsionPoly t, double lo, double hi,
                   double target_angle, const IntegratorConfig& config);

enum class NormalsFree { c, e };

struct NormalsTuning {
    double value;  // tuned free parameter
    double b;      // matching adjusted b
};

/// Nested bisection: the outer loop tunes c or e to the target normal
/// angle; every outer evaluation re-runs adjust_b over [b_lo, b_hi].
NormalsTuning tune_normals(NormalsFree which, double kappa, double c, double e, double lo,
                           double hi, double b_lo, double b_hi, double target_angle,
                           const IntegratorConfig& config);

struct AssembledClosed {
    FrenetSolution solution;  // closed curve, s in [0, periods * pi]
    int periods;              // smallest m with gaps below the closure tolerance
};

/// Integrates over successive multiples of pi and stops at the smallest m
/// with position gap and tangent gap below 1e-6. Throws ClosureNotReached
/// after max_multiples (callers pass 4q for a target angle pi p/q).
AssembledClosed assemble_closed(double kappa, const TorsionPoly& t,
                                const IntegratorConfig& config, int max_multiples);

}  // namespace constcurve
