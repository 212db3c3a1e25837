#include "constcurve/cylinder.hpp"

#include <algorithm>
#include <cmath>

namespace constcurve {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_radius(double R) {
    if (!(R > 0)) throw std::runtime_error("cylinder radius must be positive");
}
}  // namespace

Vec3 roll_point(double x, double y, double R) {
    return {x, R * std::cos(y / R), R * std::sin(y / R)};
}

SampledCurve roll_to_cylinder(const SampledCurve& planar, double R) {
    require_radius(R);
    SampledCurve out;
    out.step = planar.step;
    out.meta = planar.meta;
    out.meta.params["R"] = R;
    out.samples.reserve(planar.samples.size());
    for (const Vec3& q : planar.samples) out.samples.push_back(roll_point(q.x, q.y, R));
    return out;
}

double alpha_rate(double alpha, double kappa, double R) {
    require_radius(R);
    const double sa = std::sin(alpha);
    const double s4 = sa * sa * sa * sa;
    double g = kappa * kappa - s4 / (R * R);
    if (g < 0) {
        // Tolerate rounding at the boundary sin^2(alpha) = kappa R.
        if (g < -1e-12 * kappa * kappa) throw ImaginaryRate();
        g = 0;
    }
    return std::sqrt(g);
}

double alpha_accel(double alpha, double R) {
    require_radius(R);
    const double sa = std::sin(alpha), ca = std::cos(alpha);
    return -2.0 * sa * sa * sa * ca / (R * R);
}

SampledCurve convex_closed_curve(double kappa, double R, const IntegratorConfig& config) {
    require_radius(R);
    if (!(kappa > 1.0 / R)) throw RegimeViolation("convex regime needs kappa > 1/R");

    // Quarter arc with alpha as the independent variable: alpha' > 0 strictly,
    // so ds/dalpha = 1/alpha_rate is smooth and the arc ends exactly at pi/2.
    const double rate_min = std::sqrt(kappa * kappa - 1.0 / (R * R));
    const double dalpha = config.step * rate_min;  // keeps arclength substeps <= step
    const auto n_steps = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(kPi / 2 / dalpha)));

    auto rhs = [&](double alpha, const State<3>& /*y*/) -> State<3> {
        const double ds = 1.0 / alpha_rate(alpha, kappa, R);
        return {ds, std::cos(alpha) * ds, std::sin(alpha) * ds};
    };
    IntegratorConfig alpha_cfg = config;
    alpha_cfg.step = kPi / 2 / static_cast<double>(n_steps);
    const auto traj = integrate_fixed(rhs, State<3>{0, 0, 0}, 0.0, kPi / 2, alpha_cfg);

    PathTable quarter;
    for (const auto& node : traj) {
        const double alpha = node.s;
        quarter.push(node.y[0], {node.y[1], node.y[2], 0.0},
                     {std::cos(alpha), std::sin(alpha), 0.0});
    }

    // Normal line at alpha = pi/2 is horizontal through the arc end; the one
    // at alpha = 0 is the y-axis. Two reflections close the oval exactly.
    quarter.append_reflected(Plane(quarter.p.back(), {0, 1, 0}));
    quarter.append_reflected(Plane({0, 0, 0}, {1, 0, 0}));

    SampledCurve curve = resample_uniform(quarter, config.step);
    curve.meta.construction = "cylinder_convex";
    curve.meta.params = {{"R", R}, {"kappa", kappa}};
    return curve;
}

namespace {

State<4> planar_rhs(const State<4>& y, double R) {
    return {std::cos(y[2]), std::sin(y[2]), y[3], alpha_accel(y[2], R)};
}

SampledCurve planar_curve_from(const std::vector<TrajectoryPoint<4>>& traj, double step) {
    PathTable table;
    for (const auto& node : traj)
        table.push(node.s, {node.y[0], node.y[1], 0.0},
                   {std::cos(node.y[2]), std::sin(node.y[2]), 0.0});
    return resample_uniform(table, step);
}

}  // namespace

OscillatingCurve oscillating_curve(double kappa, double R, int n_halfperiods,
                                   const IntegratorConfig& config) {
    require_radius(R);
    if (!(kappa > 0 && kappa < 1.0 / R))
        throw RegimeViolation("oscillating regime needs 0 < kappa < 1/R");
    if (n_halfperiods < 1) throw std::runtime_error("n_halfperiods must be >= 1");

    auto rhs = [R](double, const State<4>& y) { return planar_rhs(y, R); };
    // Turning events: alpha' crosses zero (alternating falling/rising).
    EventSpec<4> turning{[](double, const State<4>& y) { return y[3]; }, EventDirection::any};

    const State<4> y0{0, 0, 0, kappa};
    auto events = integrate_collect_events(rhs, y0, 0.0, turning,
                                           static_cast<std::size_t>(n_halfperiods), config);

    OscillatingCurve out;
    out.trajectory = events.back().trajectory;
    for (const auto& ev : events) {
        out.turning_s.push_back(ev.event_s);
        out.turning_states.push_back(ev.event_state);
    }
    out.curve = planar_curve_from(out.trajectory, config.step);
    out.curve.meta.construction = "cylinder_oscillating";
    out.curve.meta.params = {{"R", R},
                             {"kappa", kappa},
                             {"n_halfperiods", static_cast<double>(n_halfperiods)}};
    return out;
}

AsymptoticSpiral asymptotic_spiral(double R, double alpha0, double length,
                                   const IntegratorConfig& config) {
    require_radius(R);
    if (!(alpha0 > 0 && alpha0 <= kPi / 2)) throw BadInitialAngle();
    if (!(length > 0)) throw std::runtime_error("length must be positive");

    const double rate0 = alpha_rate(alpha0, 1.0 / R, R);
    auto rhs = [R](double, const State<4>& y) { return planar_rhs(y, R); };

    // Step adjusted so the grid lands exactly on `length`.
    IntegratorConfig cfg = config;
    const auto n = std::max<std::size_t>(4, static_cast<std::size_t>(std::llround(length / config.step)));
    cfg.step = length / static_cast<double>(n);

    AsymptoticSpiral out;
    out.trajectory = integrate_fixed(rhs, State<4>{0, 0, alpha0, rate0}, 0.0, length, cfg);

    SampledCurve curve;
    curve.step = cfg.step;
    curve.samples.reserve(out.trajectory.size());
    for (const auto& node : out.trajectory) curve.samples.push_back({node.y[0], node.y[1], 0.0});
    curve.meta.construction = "cylinder_asymptotic";
    curve.meta.params = {{"R", R}, {"kappa", 1.0 / R}, {"alpha0", alpha0}, {"length", length}};
    out.curve = std::move(curve);
    return out;
}

}  // namespace constcurve
