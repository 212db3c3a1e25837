#pragma once

#include <stdexcept>
#include <vector>

#include "constcurve/curve.hpp"
#include "constcurve/ode.hpp"

namespace constcurve {

struct ImaginaryRate : std::runtime_error {
    ImaginaryRate() : std::runtime_error("kappa^2 < sin^4(alpha)/R^2, rate is imaginary") {}
};
struct RegimeViolation : std::runtime_error {
    explicit RegimeViolation(const char* what) : std::runtime_error(what) {}
};
struct BadInitialAngle : std::runtime_error {
    BadInitialAngle() : std::runtime_error("alpha0 must lie in (0, pi/2]") {}
};

struct CylinderParams {
    double R;  // cylinder radius, > 0
};

/// Rolling map F: (x, y) -> (x, R cos(y/R), R sin(y/R)). Arclength is
/// preserved, so a planar curve of geodesic curvature alpha' maps to a
/// space curve with kappa^2 = sin^4(alpha)/R^2 + alpha'^2.
SampledCurve roll_to_cylinder(const SampledCurve& planar, double R);
Vec3 roll_point(double x, double y, double R);

/// alpha'(s) = +sqrt(kappa^2 - sin^4(alpha)/R^2), the first-order regime.
double alpha_rate(double alpha, double kappa, double R);

/// alpha''(s) = -2 sin^3(alpha) cos(alpha) / R^2, the second-order regime.
double alpha_accel(double alpha, double R);

/// Closed convex planar solution for kappa > 1/R. The quarter arc
/// alpha: 0 -> pi/2 is integrated with alpha as the independent variable
/// and completed by reflection in the normal lines at alpha = 0 and pi/2.
SampledCurve convex_closed_curve(double kappa, double R, const IntegratorConfig& config);

/// Planar state (x, y, alpha, alpha') of the second-order regime.
using PlanarState = State<4>;

struct OscillatingCurve {
    SampledCurve curve;                          // open, periodic
    std::vector<double> turning_s;               // arclengths of alpha' = 0 events
    std::vector<PlanarState> turning_states;     // (x, y, alpha, alpha') at the events
    std::vector<TrajectoryPoint<4>> trajectory;  // raw run up to the last event
};

/// Oscillating solution for 0 < kappa < 1/R, integrated from alpha(0) = 0,
/// alpha'(0) = kappa through n_halfperiods turning events. At every
/// turning event sin^2(alpha) = kappa R.
OscillatingCurve oscillating_curve(double kappa, double R, int n_halfperiods,
                                   const IntegratorConfig& config);

struct AsymptoticSpiral {
    SampledCurve curve;
    std::vector<TrajectoryPoint<4>> trajectory;
};

/// kappa = 1/R boundary case: alpha increases monotonically and approaches
/// pi/2 without reaching it; the rolled image spirals toward a circle
/// latitude. alpha0 = pi/2 exactly gives the constant (latitude) solution.
AsymptoticSpiral asymptotic_spiral(double R, double alpha0, double length,
                                   const IntegratorConfig& config);

}  // namespace constcurve
