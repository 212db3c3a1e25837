#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "constcurve/curve.hpp"
#include "constcurve/solvers.hpp"
#include "constcurve/torus.hpp"

using namespace constcurve;

namespace {

constexpr double kPi = 3.14159265358979323846;
const TorusParams tp{2.0, 1.0};

IntegratorConfig config(double step = 1e-3, double max_length = 500.0) {
    return {step, Method::rk4, max_length};
}

Vec3 torus_point(double u, double v, const TorusParams& p) {
    return {(p.A + p.r * std::cos(v)) * std::cos(u), (p.A + p.r * std::cos(v)) * std::sin(u),
            p.r * std::sin(v)};
}

// Second-fundamental-form oracle: kappa_n = <gamma''(0), N> for the
// projected straight line gamma(s) = project(p + s t), by central
// differences. Depends only on (p, t), like the closed form it checks.
double kappa_n_fd(const Vec3& p, const Vec3& t, const TorusParams& params) {
    const double h = 1e-4;
    const Vec3 plus = project_to_torus(p + h * t, params);
    const Vec3 minus = project_to_torus(p - h * t, params);
    const Vec3 acc = (plus - 2.0 * p + minus) / (h * h);
    return acc.dot(torus_geometry(p, params).normal);
}

double max_kappa_dev(const SampledCurve& c, double target) {
    double m = 0;
    for (double k : discrete_invariants(c).kappa) m = std::max(m, std::abs(k - target));
    return m;
}

double max_surface_residual(const SampledCurve& c, const TorusParams& params) {
    double m = 0;
    for (const Vec3& p : c.samples) m = std::max(m, torus_implicit_residual(p, params));
    return m;
}

}  // namespace

TEST_CASE("torus geometry at the reference points") {
    auto outer = torus_geometry({3, 0, 0}, tp);
    CHECK(distance(outer.normal, {-1, 0, 0}) < 1e-12);
    CHECK(std::abs(outer.u) < 1e-12);
    CHECK(std::abs(outer.v) < 1e-12);

    auto top = torus_geometry({2, 0, 1}, tp);
    CHECK(distance(top.normal, {0, 0, -1}) < 1e-12);
    CHECK(top.v == doctest::Approx(kPi / 2).epsilon(1e-12));

    auto inner = torus_geometry({1, 0, 0}, tp);
    CHECK(distance(inner.normal, {1, 0, 0}) < 1e-12);
    CHECK(std::abs(inner.v) == doctest::Approx(kPi).epsilon(1e-12));

    CHECK_THROWS_AS(torus_geometry({10, 0, 0}, tp), OffSurface);
}

TEST_CASE("normal curvature against the finite-difference oracle") {
    // Meridian direction gives 1/r everywhere; parallel gives
    // cos v / (A + r cos v).
    CHECK(normal_curvature({3, 0, 0}, {0, 0, 1}, tp) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(normal_curvature({3, 0, 0}, {0, 1, 0}, tp) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(normal_curvature({1, 0, 0}, {0, 1, 0}, tp) == doctest::Approx(-1.0).epsilon(1e-12));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    for (int trial = 0; trial < 25; ++trial) {
        const double u = ang(rng), v = ang(rng), phi = ang(rng);
        const Vec3 p = torus_point(u, v, tp);
        // Random unit tangent out of the parallel/meridian basis.
        const Vec3 e_u{-std::sin(u), std::cos(u), 0};
        const Vec3 e_m{-std::sin(v) * std::cos(u), -std::sin(v) * std::sin(u), std::cos(v)};
        const Vec3 t = std::cos(phi) * e_u + std::sin(phi) * e_m;
        CHECK(std::abs(normal_curvature(p, t, tp) - kappa_n_fd(p, t, tp)) < 1e-6);
    }

    CHECK_THROWS_AS(normal_curvature({3, 0, 0}, {1, 0, 0}, tp), NotTangent);
}

TEST_CASE("required geodesic curvature") {
    CHECK(required_geodesic_curvature(2.0, 2.0) == 0.0);
    CHECK(required_geodesic_curvature(5.0, 3.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(required_geodesic_curvature(5.0, -3.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(required_geodesic_curvature(1.0, 2.0), CurvatureTooSmall);
}

TEST_CASE("surface ODE right-hand side") {
    // Meridian launch at the outer equator with kappa = 1/r: pure normal
    // acceleration.
    const auto rhs0 = surface_ode_rhs(make_surface_state({3, 0, 0}, {0, 0, 1}), 1.0, +1, tp);
    CHECK(distance(state_velocity(rhs0), {-1, 0, 0}) < 1e-12);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    for (int trial = 0; trial < 25; ++trial) {
        const double u = ang(rng), v = ang(rng), phi = ang(rng);
        const Vec3 p = torus_point(u, v, tp);
        const Vec3 e_u{-std::sin(u), std::cos(u), 0};
        const Vec3 e_m{-std::sin(v) * std::cos(u), -std::sin(v) * std::sin(u), std::cos(v)};
        const Vec3 t = std::cos(phi) * e_u + std::sin(phi) * e_m;
        const double kappa = 2.0;
        const auto d = surface_ode_rhs(make_surface_state(p, t), kappa, +1, tp);
        const Vec3 acc = state_velocity(d);
        CHECK(std::abs(acc.norm() - kappa) < 1e-10);  // |c''| = kappa
        CHECK(std::abs(acc.dot(t)) < 1e-10);          // c'' orthogonal to c'
        CHECK(distance(state_position(d), t) == 0.0);
    }
}

TEST_CASE("symmetric closed curve on the torus") {
    for (auto start : {EquatorStart::outer, EquatorStart::inner}) {
        const auto curve = symmetric_closed_curve(1.5, start, tp, config());
        curve.validate();
        CHECK(closure_report(curve).position_gap < 1e-8);
        CHECK(max_surface_residual(curve, tp) < 1e-8);
        CHECK(max_kappa_dev(curve, 1.5) < 1e-4);

        // Equator-plane symmetry: sample k reflects onto sample N-k.
        const auto& p = curve.samples;
        const std::size_t n = p.size() - 1;
        double sym = 0;
        for (std::size_t k = 0; k <= n; ++k) {
            const Vec3 mirrored{p[k].x, p[k].y, -p[k].z};
            sym = std::max(sym, distance(mirrored, p[n - k]));
        }
        CHECK(sym < 1e-8);
    }
    CHECK_THROWS_AS(symmetric_closed_curve(1.0, EquatorStart::outer, tp, config()),
                    CurvatureTooSmall);
}

TEST_CASE("unit speed and on-surface drift along integrated arcs") {
    const auto w = half_wave(0.3, tp, config());
    for (const auto& node : w.rising) {
        CHECK(std::abs(state_velocity(node.y).norm() - 1.0) < 1e-9);
        CHECK(torus_implicit_residual(state_position(node.y), tp) < 1e-8);
        // kappa^2 = kappa_g^2 + kappa_n^2 realized by the ODE: |c''| = kappa.
        const auto d = surface_ode_rhs(node.y, w.kappa, -1, tp);
        CHECK(std::abs(state_velocity(d).norm() - w.kappa) < 1e-10);
    }
}

TEST_CASE("half wave launch properties") {
    // theta0 -> 0 limit: kappa tends to the outer-parallel normal curvature.
    CHECK(half_wave(1e-3, tp, config()).kappa == doctest::Approx(1.0 / 3).epsilon(1e-5));

    const auto w = half_wave(0.3, tp, config());
    // kappa_g = 0 at launch, then strictly positive.
    const double kn0 = normal_curvature({3, 0, 0},
                                        state_velocity(w.rising.front().y), tp);
    CHECK(w.kappa == doctest::Approx(kn0).epsilon(1e-12));
    for (std::size_t i = 3; i < w.rising.size(); ++i) {
        const double kn = normal_curvature(state_position(w.rising[i].y),
                                           state_velocity(w.rising[i].y), tp);
        CHECK(w.kappa - std::abs(kn) > 0.0);
    }

    // The half-wave ends back on the equator, mirror tangent angle -theta0.
    const Vec3 end = w.arc.p.back();
    const Vec3 end_t = w.arc.t.back();
    CHECK(std::abs(end.z) < 1e-9);
    CHECK(std::abs(std::hypot(end.x, end.y) - 3.0) < 1e-9);
    CHECK(end_t.z == doctest::Approx(-std::sin(0.3)).epsilon(1e-8));
}

TEST_CASE("delta_u is continuous and monotone over the shooting bracket") {
    // On the A = 2r torus the launch angle is capped near 0.91: beyond it
    // the rising arc reaches latitudes where |kappa_n| exceeds the enforced
    // kappa before meeting a meridian orthogonally.
    std::vector<double> values;
    for (int i = 0; i < 20; ++i) {
        const double theta = 0.05 + (0.90 - 0.05) * i / 19.0;
        values.push_back(half_wave(theta, tp, config(2e-3)).delta_u);
    }
    double max_jump = 0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        CHECK(values[i + 1] < values[i]);  // monotone decreasing in theta0
        max_jump = std::max(max_jump, std::abs(values[i + 1] - values[i]));
    }
    const double median_jump = std::abs(values[10] - values[9]);
    CHECK(max_jump < 10.0 * median_jump);
}

TEST_CASE("oscillating closed curve with 8 half waves") {
    // 2 pi / 8 lies inside the attainable delta_u range of the A = 3, r = 1
    // torus (on A = 2, r = 1 the range is (0.8696, 1.0092), see the
    // hopeless-bracket case below).
    const TorusParams wide{3.0, 1.0};
    const auto res = oscillating_closed_curve(8, wide, 0.1, 0.6, config());
    CHECK(std::abs(res.delta_u - 2 * kPi / 8) < 1e-10);
    res.curve.validate();
    CHECK(closure_report(res.curve).position_gap < 1e-7);
    CHECK(max_kappa_dev(res.curve, res.kappa) < 1e-4);
    CHECK(max_surface_residual(res.curve, wide) < 1e-8);

    // Geodesic curvature opposes the equator offset, so its sign
    // alternates between consecutive half-waves.
    const auto& p = res.curve.samples;
    const double h = res.curve.step;
    double max_z = 0;
    for (const Vec3& q : p) max_z = std::max(max_z, std::abs(q.z));
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        if (std::abs(p[i].z) < 0.3 * max_z) continue;
        const Vec3 acc = (p[i + 1] - 2.0 * p[i] + p[i - 1]) / (h * h);
        const Vec3 t = (p[i + 1] - p[i - 1]).normalized();
        const Vec3 n = torus_geometry(project_to_torus(p[i], wide), wide).normal;
        const double kg = acc.dot(t.cross(n));
        CHECK(kg * p[i].z < 0.0);
    }

    // 4-fold rotational symmetry about the torus axis (8 half-waves, two
    // per period): rotating by pi/2 maps the sample set onto itself.
    const std::size_t n = p.size() - 1;
    REQUIRE(n % 4 == 0);
    double sym = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const Vec3 rot{-p[k].y, p[k].x, p[k].z};  // rotation by pi/2 about z
        sym = std::max(sym, distance(rot, p[(k + n / 4) % n]));
    }
    CHECK(sym < 1e-6);
}

TEST_CASE("oscillating shooting with a hopeless bracket") {
    CHECK_THROWS_AS(oscillating_closed_curve(2, tp, 0.01, 0.02, config()), NoBracket);
}
