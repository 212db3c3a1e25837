#include "constcurve/torus.hpp"

#include <algorithm>
#include <cmath>

#include "constcurve/solvers.hpp"

namespace constcurve {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_params(const TorusParams& tp) {
    if (!(tp.A > tp.r && tp.r > 0)) throw std::runtime_error("torus needs A > r > 0");
}

// Smooth tubular-neighborhood geometry, valid slightly off the surface.
struct LocalGeometry {
    double u, v;
    Vec3 e_u;     // unit parallel direction
    Vec3 e_m;     // unit meridian direction
    Vec3 normal;  // unit, tube-inward
    double k_par; // principal curvature of the parallel direction
    double k_mer; // principal curvature of the meridian direction, 1/r
};

LocalGeometry local_geometry(const Vec3& p, const TorusParams& tp) {
    const double rho = std::hypot(p.x, p.y);
    if (rho < 1e-12) throw std::runtime_error("torus geometry undefined on the axis");
    LocalGeometry g;
    g.u = std::atan2(p.y, p.x);
    g.v = std::atan2(p.z, rho - tp.A);
    const double cu = p.x / rho, su = p.y / rho;
    const double cv = std::cos(g.v), sv = std::sin(g.v);
    g.e_u = {-su, cu, 0};
    g.e_m = {-sv * cu, -sv * su, cv};
    g.normal = {-cv * cu, -cv * su, -sv};
    g.k_par = cv / (tp.A + tp.r * cv);
    g.k_mer = 1.0 / tp.r;
    return g;
}

double normal_curvature_unchecked(const LocalGeometry& g, const Vec3& t) {
    const double a = t.dot(g.e_u), b = t.dot(g.e_m);
    const double n2 = a * a + b * b;
    return (a * a * g.k_par + b * b * g.k_mer) / n2;
}

double geodesic_curvature_clamped(double kappa, double kappa_n) {
    double g = kappa * kappa - kappa_n * kappa_n;
    if (g < 0) {
        if (g < -1e-10 * kappa * kappa) throw CurvatureTooSmall();
        g = 0;
    }
    return std::sqrt(g);
}

PostStep<6> projection_post_step(const TorusParams& tp) {
    return [tp](double, State<6>& y) {
        Vec3 p = state_position(y);
        p = project_to_torus(p, tp);
        const Vec3 n = local_geometry(p, tp).normal;
        Vec3 v = state_velocity(y);
        v = (v - v.dot(n) * n).normalized();
        y = make_surface_state(p, v);
    };
}

// Meridian-orthogonality indicator: <velocity, meridian direction>.
double meridian_component(const State<6>& y, const TorusParams& tp) {
    return state_velocity(y).dot(local_geometry(state_position(y), tp).e_m);
}

PathTable table_from_trajectory(const std::vector<TrajectoryPoint<6>>& traj) {
    PathTable t;
    for (const auto& node : traj)
        t.push(node.s, state_position(node.y), state_velocity(node.y));
    return t;
}

// Azimuth advance of the trajectory, unwrapped step by step.
double unwrapped_axis_angle(const PathTable& table) {
    double total = 0;
    for (std::size_t i = 0; i + 1 < table.size(); ++i) {
        const Vec3& a = table.p[i];
        const Vec3& b = table.p[i + 1];
        total += std::atan2(a.x * b.y - a.y * b.x, a.x * b.x + a.y * b.y);
    }
    return total;
}

SampledCurve finish_curve(const PathTable& table, const TorusParams& tp,
                          const IntegratorConfig& config) {
    SampledCurve curve = resample_uniform(table, config.step);
    for (Vec3& q : curve.samples) q = project_to_torus(q, tp);
    return curve;
}

}  // namespace

double torus_implicit_residual(const Vec3& p, const TorusParams& tp) {
    const double rho = std::hypot(p.x, p.y);
    const double d = rho - tp.A;
    return std::abs(d * d + p.z * p.z - tp.r * tp.r);
}

Vec3 project_to_torus(const Vec3& p, const TorusParams& tp) {
    require_params(tp);
    const double rho = std::hypot(p.x, p.y);
    if (rho < 1e-12) throw std::runtime_error("cannot project the axis onto the torus");
    const Vec3 center{tp.A * p.x / rho, tp.A * p.y / rho, 0.0};
    return center + tp.r * (p - center).normalized();
}

TorusPointGeometry torus_geometry(const Vec3& p, const TorusParams& tp) {
    require_params(tp);
    if (torus_implicit_residual(p, tp) > 1e-6) throw OffSurface();
    const LocalGeometry g = local_geometry(p, tp);
    return {g.normal, g.u, g.v};
}

double normal_curvature(const Vec3& p, const Vec3& t, const TorusParams& tp) {
    require_params(tp);
    if (torus_implicit_residual(p, tp) > 1e-6) throw OffSurface();
    const LocalGeometry g = local_geometry(p, tp);
    if (std::abs(t.dot(g.normal)) > 1e-8 * t.norm()) throw NotTangent();
    return normal_curvature_unchecked(g, t);
}

double required_geodesic_curvature(double kappa, double kappa_n) {
    if (kappa < std::abs(kappa_n) * (1.0 - 1e-12)) throw CurvatureTooSmall();
    const double g = kappa * kappa - kappa_n * kappa_n;
    return g > 0 ? std::sqrt(g) : 0.0;
}

SurfaceState make_surface_state(const Vec3& p, const Vec3& v) {
    return {p.x, p.y, p.z, v.x, v.y, v.z};
}
Vec3 state_position(const SurfaceState& y) { return {y[0], y[1], y[2]}; }
Vec3 state_velocity(const SurfaceState& y) { return {y[3], y[4], y[5]}; }

SurfaceState surface_ode_rhs(const SurfaceState& y, double kappa, int sign_g,
                             const TorusParams& tp) {
    const Vec3 p = state_position(y);
    const Vec3 v = state_velocity(y);
    const LocalGeometry g = local_geometry(p, tp);
    const double kn = normal_curvature_unchecked(g, v);
    const double kg = geodesic_curvature_clamped(kappa, kn);
    const Vec3 acc = kn * g.normal + (sign_g * kg) * v.cross(g.normal);
    return {v.x, v.y, v.z, acc.x, acc.y, acc.z};
}

double max_abs_normal_curvature(const TorusParams& tp) {
    return std::max(1.0 / tp.r, 1.0 / (tp.A - tp.r));
}

SampledCurve symmetric_closed_curve(double kappa, EquatorStart start, const TorusParams& tp,
                                    const IntegratorConfig& config) {
    require_params(tp);
    if (!(kappa > max_abs_normal_curvature(tp))) throw CurvatureTooSmall();

    const double rho0 = start == EquatorStart::outer ? tp.A + tp.r : tp.A - tp.r;
    const SurfaceState y0 = make_surface_state({rho0, 0, 0}, {0, 0, 1});

    auto rhs = [&](double, const State<6>& y) { return surface_ode_rhs(y, kappa, +1, tp); };
    EventSpec<6> orthogonal{[&](double, const State<6>& y) { return meridian_component(y, tp); },
                            EventDirection::any};

    const auto quarter =
        integrate_until_event(rhs, y0, 0.0, orthogonal, config, projection_post_step(tp));

    PathTable table = table_from_trajectory(quarter.trajectory);

    // Reflection in the meridian plane of the event point, then in the
    // equator plane, closes the curve.
    const Vec3 pe = state_position(quarter.event_state);
    const double u1 = std::atan2(pe.y, pe.x);
    table.append_reflected(Plane({0, 0, 0}, {-std::sin(u1), std::cos(u1), 0}));
    table.append_reflected(Plane({0, 0, 0}, {0, 0, 1}));

    SampledCurve curve = finish_curve(table, tp, config);
    curve.meta.construction = "torus_symmetric";
    curve.meta.params = {{"A", tp.A},
                         {"r", tp.r},
                         {"kappa", kappa},
                         {"inner", start == EquatorStart::inner ? 1.0 : 0.0}};
    return curve;
}

HalfWave half_wave(double theta0, const TorusParams& tp, const IntegratorConfig& config) {
    require_params(tp);
    if (!(theta0 > 0 && theta0 < kPi / 2))
        throw std::runtime_error("half_wave: theta0 must lie in (0, pi/2)");

    const Vec3 p0{tp.A + tp.r, 0, 0};
    const Vec3 v0 = std::cos(theta0) * Vec3{0, 1, 0} + std::sin(theta0) * Vec3{0, 0, 1};
    const double kappa = normal_curvature_unchecked(local_geometry(p0, tp), v0);

    // sign_g = -1 bends the rising arc back toward the equator.
    auto rhs = [&](double, const State<6>& y) { return surface_ode_rhs(y, kappa, -1, tp); };
    EventSpec<6> orthogonal{[&](double, const State<6>& y) { return meridian_component(y, tp); },
                            EventDirection::falling};

    IntegratorConfig cfg = config;
    cfg.event_tolerance = std::min(config.event_tolerance, 1e-12);
    const auto quarter = integrate_until_event(rhs, make_surface_state(p0, v0), 0.0, orthogonal,
                                               cfg, projection_post_step(tp));

    HalfWave out;
    out.kappa = kappa;
    out.s_turn = quarter.event_s;
    out.rising = quarter.trajectory;
    out.arc = table_from_trajectory(quarter.trajectory);

    const Vec3 pe = state_position(quarter.event_state);
    const double u1 = std::atan2(pe.y, pe.x);
    out.arc.append_reflected(Plane({0, 0, 0}, {-std::sin(u1), std::cos(u1), 0}));
    out.delta_u = unwrapped_axis_angle(out.arc);
    return out;
}

namespace {

// Appends rot180(piece reversed) about `axis` to `chain`; returns the new piece.
PathTable append_next_half_wave(PathTable& chain, const PathTable& piece, const Line& axis) {
    PathTable next;
    const double base = chain.s.back();
    const double s_end = piece.s.back();
    for (std::size_t j = piece.size(); j-- > 0;) {
        next.push(base + (s_end - piece.s[j]), rotate_point_180(piece.p[j], axis),
                  -rotate_vector_180(piece.t[j], axis));
    }
    for (std::size_t j = 1; j < next.size(); ++j)  // skip the duplicated junction
        chain.push(next.s[j], next.p[j], next.t[j]);
    return next;
}

}  // namespace

OscillatingTorusCurve oscillating_closed_curve(int n_halfwaves, const TorusParams& tp,
                                               double theta_lo, double theta_hi,
                                               const IntegratorConfig& config, int wrap) {
    require_params(tp);
    if (n_halfwaves < 2 || n_halfwaves % 2 != 0)
        throw std::runtime_error("n_halfwaves must be an even integer >= 2");
    if (wrap < 1) throw std::runtime_error("wrap must be >= 1");

    const double target = 2.0 * kPi * wrap / n_halfwaves;
    auto objective = [&](double theta) { return half_wave(theta, tp, config).delta_u - target; };
    const double theta0 = bisect_on(objective, theta_lo, theta_hi, 1e-14, 3e-11);

    const HalfWave w = half_wave(theta0, tp, config);
    PathTable chain = w.arc;
    PathTable piece = w.arc;
    for (int k = 1; k < n_halfwaves; ++k) {
        const Vec3 end = chain.p.back();
        const Line axis(end, local_geometry(end, tp).normal);
        piece = append_next_half_wave(chain, piece, axis);
    }

    OscillatingTorusCurve out;
    out.curve = finish_curve(chain, tp, config);
    out.curve.meta.construction = "torus_oscillating";
    out.curve.meta.params = {{"A", tp.A},
                             {"r", tp.r},
                             {"kappa", w.kappa},
                             {"theta0", theta0},
                             {"n_halfwaves", static_cast<double>(n_halfwaves)},
                             {"wrap", static_cast<double>(wrap)}};
    out.theta0 = theta0;
    out.kappa = w.kappa;
    out.delta_u = w.delta_u;
    out.halfwave_length = w.arc.length();
    out.n_halfwaves = n_halfwaves;
    return out;
}

}  // namespace constcurve
