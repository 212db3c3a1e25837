#pragma once

#include <stdexcept>
#include <vector>

#include "constcurve/curve.hpp"
#include "constcurve/ode.hpp"

namespace constcurve {

struct OffSurface : std::runtime_error {
    OffSurface() : std::runtime_error("point is not on the torus") {}
};
struct NotTangent : std::runtime_error {
    NotTangent() : std::runtime_error("vector is not tangent to the torus") {}
};
struct CurvatureTooSmall : std::runtime_error {
    CurvatureTooSmall() : std::runtime_error("kappa < |kappa_n|, geodesic curvature undefined") {}
};

/// Torus of revolution about the z-axis, embedded as
///   (u, v) -> ((A + r cos v) cos u, (A + r cos v) sin u, r sin v),
/// implicit equation (sqrt(x^2+y^2) - A)^2 + z^2 = r^2. The unit normal is
/// oriented toward the tube center circle (inward), which makes the
/// meridian normal curvature +1/r everywhere.
struct TorusParams {
    double A;  // center-circle radius
    double r;  // tube radius, 0 < r < A
};

enum class EquatorStart { inner, outer };

double torus_implicit_residual(const Vec3& p, const TorusParams& params);

/// Nearest torus point along the tube-radial direction.
Vec3 project_to_torus(const Vec3& p, const TorusParams& params);

struct TorusPointGeometry {
    Vec3 normal;  // unit, tube-inward
    double u, v;  // angles of the parametrization
};

/// Throws OffSurface if the implicit residual exceeds 1e-6.
TorusPointGeometry torus_geometry(const Vec3& p, const TorusParams& params);

/// kappa_n of the direction t at p (Euler's formula in the principal
/// parallel/meridian directions). Throws OffSurface / NotTangent.
double normal_curvature(const Vec3& p, const Vec3& t, const TorusParams& params);

/// kappa_g = +sqrt(kappa^2 - kappa_n^2). Throws CurvatureTooSmall.
double required_geodesic_curvature(double kappa, double kappa_n);

/// Ambient state (position, velocity) of the surface-curve ODE
///   c'' = kappa_n(c') N + sign_g kappa_g(c') (c' x N).
using SurfaceState = State<6>;

SurfaceState make_surface_state(const Vec3& p, const Vec3& v);
Vec3 state_position(const SurfaceState& y);
Vec3 state_velocity(const SurfaceState& y);

/// Right-hand side of the surface-curve ODE. Uses the smooth tubular
/// extension of the torus geometry so Runge-Kutta stage points slightly
/// off the surface are fine.
SurfaceState surface_ode_rhs(const SurfaceState& y, double kappa, int sign_g,
                             const TorusParams& params);

/// Largest |kappa_n| over the whole torus: max(1/r, 1/(A-r)).
double max_abs_normal_curvature(const TorusParams& params);

/// Closed curve symmetric to the equator plane: integrate from the chosen
/// equator with velocity vertically up until the curve meets a meridian
/// orthogonally, then complete by reflection in that meridian plane and in
/// the equator plane. Requires kappa > max |kappa_n|.
SampledCurve symmetric_closed_curve(double kappa, EquatorStart start, const TorusParams& params,
                                    const IntegratorConfig& config);

struct HalfWave {
    PathTable arc;       // one half-wave, outer-equator crossing to crossing
    double delta_u;      // axis angle advanced by the half-wave
    double kappa;        // = kappa_n(c'(0)), the enforced space curvature
    double s_turn;       // arclength of the meridian-orthogonal turning point
    std::vector<TrajectoryPoint<6>> rising;  // raw rising quarter
};

/// One half-wave of the family oscillating around the outer equator.
/// theta0 in (0, pi/2) is the launch angle between c'(0) and the equator
/// direction; the space curvature is kappa_n(c'(0)).
HalfWave half_wave(double theta0, const TorusParams& params, const IntegratorConfig& config);

struct OscillatingTorusCurve {
    SampledCurve curve;
    double theta0;           // tuned launch angle
    double kappa;
    double delta_u;          // converged advance, 2 pi wrap / n_halfwaves
    double halfwave_length;  // arclength of one half-wave
    int n_halfwaves;
};

/// Shooting construction: bisect theta0 inside `bracket` until an even
/// number of half-waves fits `wrap` times around the axis
/// (delta_u = 2 pi wrap / n_halfwaves), then chain the half-waves by
/// 180-degree rotations about the torus normals at the equator crossings.
/// The geodesic curvature alternates sign between consecutive half-waves.
OscillatingTorusCurve oscillating_closed_curve(int n_halfwaves, const TorusParams& params,
                                               double theta_lo, double theta_hi,
                                               const IntegratorConfig& config, int wrap = 1);

}  // namespace constcurve
