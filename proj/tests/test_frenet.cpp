#include <doctest.h>

#include <cmath>
#include <random>

#include "constcurve/curve.hpp"
#include "constcurve/frenet.hpp"
#include "constcurve/solvers.hpp"

using namespace constcurve;

namespace {

constexpr double kPi = 3.14159265358979323846;

IntegratorConfig config(double step = 1e-3) { return {step, Method::rk4, 1e6}; }

// Max residual of c(s1 + t) = motion(c(s1 - t)) over the grid, t in [0, s1].
double continuation_residual(const FrenetSolution& sol, double s1,
                             const std::function<Vec3(const Vec3&)>& motion) {
    const double h = sol.curve.step;
    const auto n1 = static_cast<std::size_t>(std::llround(s1 / h));
    double res = 0;
    for (std::size_t k = 0; k <= n1; ++k) {
        const Vec3 ahead = sol.curve.samples[n1 + k];
        const Vec3 behind = sol.curve.samples[n1 - k];
        res = std::max(res, distance(ahead, motion(behind)));
    }
    return res;
}

}  // namespace

TEST_CASE("torsion polynomial evaluation and symmetries") {
    CHECK(torsion_eval({0, 0, 0, 0}, 1.234) == 0.0);

    const TorsionPoly skew{0, 0.7, -0.3, 0.4};
    for (double s : {0.3, 1.1, 2.9})
        CHECK(torsion_eval(skew, -s) == doctest::Approx(-torsion_eval(skew, s)).epsilon(1e-15));

    const TorsionPoly sym{0.2, 0.7, 0, 0.4};
    for (double s : {0.3, 1.1, 2.9})
        CHECK(torsion_eval(sym, kPi / 2 - s) ==
              doctest::Approx(torsion_eval(sym, kPi / 2 + s)).epsilon(1e-14));
}

TEST_CASE("frenet right-hand side") {
    const FrenetOdeState y = pack_frenet({{0, 0, 0}, Frame::world()});
    const auto d = frenet_rhs(y, 0.0, 1.0, {0, 0, 0, 0});
    const FrenetState ds = unpack_frenet(d);
    CHECK(distance(ds.position, {1, 0, 0}) == 0.0);   // c' = e1
    CHECK(distance(ds.frame.e1, {0, 1, 0}) == 0.0);   // e1' = kappa e2
    CHECK(ds.frame.e3.norm() == 0.0);                 // e3' = tau e2 = 0

    // d/ds <ei, ej> = 0: the coefficient matrix is antisymmetric.
    std::mt19937 rng(3);
    std::normal_distribution<double> n(0, 1);
    for (int trial = 0; trial < 10; ++trial) {
        Frame f;
        f.e1 = Vec3{n(rng), n(rng), n(rng)}.normalized();
        Vec3 v{n(rng), n(rng), n(rng)};
        f.e2 = (v - v.dot(f.e1) * f.e1).normalized();
        f.e3 = f.e1.cross(f.e2);
        const auto dy = frenet_rhs(pack_frenet({{0, 0, 0}, f}), 0.7, 1.3, {0.2, 0.5, 0.1, -0.4});
        const FrenetState dd = unpack_frenet(dy);
        const Vec3* e[3] = {&f.e1, &f.e2, &f.e3};
        const Vec3* de[3] = {&dd.frame.e1, &dd.frame.e2, &dd.frame.e3};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(std::abs(de[i]->dot(*e[j]) + e[i]->dot(*de[j])) < 1e-14);
    }
}

TEST_CASE("sign convention lock: kappa = 1, tau = 1 helix") {
    const auto sol = integrate_frenet(1.0, {1.0, 0, 0, 0}, 2 * kPi, config());
    const auto inv = discrete_invariants(sol.curve);
    double kmax = 0, tdev = 0;
    for (double k : inv.kappa) kmax = std::max(kmax, std::abs(k - 1.0));
    for (double t : inv.tau) tdev = std::max(tdev, std::abs(t - 1.0));
    CHECK(kmax < 1e-3);
    CHECK(tdev < 1e-3);  // discrete tau is +1, matching e3' = +tau e2
}

TEST_CASE("circles close") {
    const auto sol = integrate_frenet(1.0, {0, 0, 0, 0}, 2 * kPi, config());
    CHECK(closure_report(sol.curve).position_gap < 1e-9);

    const auto half = integrate_frenet(2.0, {0, 0, 0, 0}, kPi, config());
    CHECK(closure_report(half.curve).position_gap < 1e-9);
}

TEST_CASE("frames stay orthonormal") {
    const auto sol = integrate_frenet(1.0, {0.3, 0.9, -0.2, 0.4}, 4 * kPi, config());
    double res = 0;
    for (const Frame& f : sol.curve.frames) res = std::max(res, f.orthonormality_residual());
    CHECK(res < 1e-12);
    CHECK(std::abs(sol.curve.frames.back().as_matrix().det() - 1.0) < 1e-12);
}

TEST_CASE("discrete torsion tracks the torsion polynomial") {
    const TorsionPoly t{0, 0.5, 0.3, 0.2};
    const auto sol = integrate_frenet(1.0, t, 2 * kPi, config());
    const auto inv = discrete_invariants(sol.curve);
    const double h = sol.curve.step;
    double max_dev = 0;
    for (std::size_t j = 5; j + 5 < inv.tau.size(); ++j) {
        const double s_mid = (static_cast<double>(j) + 1.5) * h;
        max_dev = std::max(max_dev, std::abs(inv.tau[j] - torsion_eval(t, s_mid)));
    }
    CHECK(max_dev < 1e-2);
}

TEST_CASE("normal symmetry planes") {
    const auto sol = integrate_frenet(1.0, {0, 0.8, 0, 0}, 2 * kPi, config());
    const auto planes = normal_symmetry_planes(sol);
    REQUIRE(planes.size() == 3);  // s = 0, pi, 2 pi
    CHECK(distance(planes[0].point, {0, 0, 0}) == 0.0);
    CHECK(distance(planes[0].normal, {1, 0, 0}) < 1e-15);

    const auto circle = integrate_frenet(1.0, {0, 0, 0, 0}, 2 * kPi, config());
    CHECK(normal_symmetry_planes(circle).size() == 3);

    const auto biased = integrate_frenet(1.0, {0.1, 0.8, 0, 0}, 2 * kPi, config());
    CHECK_THROWS_AS(normal_symmetry_planes(biased), NotSkewSymmetric);
}

TEST_CASE("reflection symmetry of the curve for skew torsion") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        const TorsionPoly t{0, coef(rng), coef(rng), coef(rng)};
        const auto sol = integrate_frenet(1.0, t, 2 * kPi, config());
        const FrenetState mid = sol.at(kPi);
        const Plane mirror(mid.position, mid.frame.e1);
        const double res = continuation_residual(
            sol, kPi, [&](const Vec3& p) { return mirror.reflect_point(p); });
        CHECK(res < 1e-7);
    }
}

TEST_CASE("plane family meets in one line") {
    const auto circle = integrate_frenet(1.0, {0, 0, 0, 0}, 2 * kPi, config());
    CHECK_THROWS_AS(plane_family_angle(circle), ParallelPlanes);

    for (double kappa : {0.8, 1.0, 1.3}) {
        for (double c : {0.4, 0.9}) {
            const auto sol = integrate_frenet(kappa, {0, c, 0, 0}, 4 * kPi, config(2e-3));
            const auto fam = plane_family_angle(sol);
            CHECK(fam.axis_consistency < 1e-7);
            CHECK(fam.angle > 0);
            CHECK(fam.angle < kPi);
        }
    }
}

TEST_CASE("period holonomy is a rotation about the pencil axis") {
    for (double c : {0.5, 0.9}) {
        const auto sol = integrate_frenet(1.0, {0, c, 0, 0}, 2 * kPi, config());
        const auto fam = plane_family_angle(sol);
        const FrenetState a = sol.at(0), b = sol.at(2 * kPi);
        const auto screw =
            screw_decompose(motion_between_frames(a.position, a.frame, b.position, b.frame));
        CHECK(std::abs(screw.slide) < 1e-7);
        const double expected =
            2 * fam.angle > kPi ? 2 * kPi - 2 * fam.angle : 2 * fam.angle;
        CHECK(std::abs(screw.angle - expected) < 1e-7);
        const auto ll = line_line_geometry(screw.axis, fam.axis);
        CHECK(ll.distance < 1e-6);
        CHECK(ll.angle < 1e-6);
    }
}

TEST_CASE("rotation symmetry normals") {
    // Constant torsion: a helix. Its principal normals cross the helix axis
    // orthogonally, so neighboring symmetry normals are skew with distance
    // equal to the axial advance over one half period: pi b / sqrt(1 + b^2).
    const double b = 0.4;
    const auto helix = integrate_frenet(1.0, {b, 0, 0, 0}, 2 * kPi, config());
    const auto lines = rotation_symmetry_normals(helix);
    REQUIRE(lines.size() == 2);
    const double expected = kPi * b / std::sqrt(1.0 + b * b);
    CHECK(line_line_geometry(lines[0], lines[1]).distance ==
          doctest::Approx(expected).epsilon(1e-6));

    const auto circle = integrate_frenet(1.0, {0, 0, 0, 0}, 2 * kPi, config());
    const auto cn = rotation_symmetry_normals(circle);
    CHECK(line_line_geometry(cn[0], cn[1]).distance < 1e-9);

    const auto bad = integrate_frenet(1.0, {0, 0.5, 0.2, 0}, 2 * kPi, config());
    CHECK_THROWS_AS(rotation_symmetry_normals(bad), NotSymmetric);
}

TEST_CASE("rotation symmetry of the curve for symmetric torsion") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        const TorsionPoly t{coef(rng), coef(rng), 0, coef(rng)};
        const auto sol = integrate_frenet(1.0, t, kPi, config());
        const FrenetState mid = sol.at(kPi / 2);
        const Line axis(mid.position, mid.frame.e2);
        const double res = continuation_residual(
            sol, kPi / 2, [&](const Vec3& p) { return rotate_point_180(p, axis); });
        CHECK(res < 1e-7);
    }
}

TEST_CASE("normals gap as a function of b") {
    // Circle limit: zero at b = 0, nonzero once b moves.
    CHECK(std::abs(normals_gap(1.0, 0.0, 0.0, 0.0, config(2e-3))) < 1e-9);
    CHECK(std::abs(normals_gap(1.0, 0.5, 0.0, 0.0, config(2e-3))) > 1e-3);

    // Continuity scan over [-1, 1] for (kappa, c, e) = (1, 0.5, 0).
    std::vector<double> gaps;
    for (int i = 0; i < 50; ++i)
        gaps.push_back(normals_gap(1.0, -1.0 + 2.0 * i / 49.0, 0.5, 0.0, config(4e-3)));
    double max_jump = 0, typical = 0;
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
        max_jump = std::max(max_jump, std::abs(gaps[i + 1] - gaps[i]));
        typical += std::abs(gaps[i + 1] - gaps[i]);
    }
    typical /= static_cast<double>(gaps.size() - 1);
    CHECK(max_jump < 10.0 * typical);

    // Sign change across b = 0 for small coefficients.
    const double lo = normals_gap(1.0, -0.2, 0.3, 0.1, config(2e-3));
    const double hi = normals_gap(1.0, +0.2, 0.3, 0.1, config(2e-3));
    CHECK(lo * hi < 0.0);
}

TEST_CASE("adjust_b drives the normals through one point") {
    CHECK(std::abs(adjust_b(1.0, 0.0, 0.0, -0.5, 0.5, config(2e-3))) < 1e-9);

    const double b_star = adjust_b(1.0, 0.5, 0.0, -0.5, 0.5, config(2e-3));
    const auto sol = integrate_frenet(1.0, {b_star, 0.5, 0, 0}, 4 * kPi, config(2e-3));
    const auto lines = rotation_symmetry_normals(sol);
    const auto fit = lines_common_point({lines.begin(), lines.begin() + 4});
    CHECK(fit.max_residual < 1e-7);

    auto hopeless = [&] { return adjust_b(1.0, 0.5, 0.0, 0.3, 0.5, config(4e-3)); };
    CHECK_THROWS_AS(hopeless(), NoBracket);
}

TEST_CASE("assemble_closed finds the circle period") {
    const auto closed = assemble_closed(1.0, {0, 0, 0, 0}, config(), 8);
    CHECK(closed.periods == 2);
    CHECK(closure_report(closed.solution.curve).position_gap < 1e-9);

    CHECK_THROWS_AS(assemble_closed(1.0, {0, 0.9, 0, 0}, config(4e-3), 1), ClosureNotReached);
}
