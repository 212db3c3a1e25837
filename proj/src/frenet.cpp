#include "constcurve/frenet.hpp"

#include <algorithm>
#include <cmath>

#include "constcurve/solvers.hpp"

namespace constcurve {

namespace {

constexpr double kPi = 3.14159265358979323846;

void gram_schmidt_post(double, FrenetOdeState& y) {
    FrenetState st = unpack_frenet(y);
    st.frame = st.frame.orthonormalized();
    y = pack_frenet(st);
}

std::size_t grid_index(const FrenetSolution& sol, double s) {
    const double k = s / sol.curve.step;
    const auto idx = static_cast<std::size_t>(std::llround(k));
    if (std::abs(k - std::round(k)) > 1e-6 || idx >= sol.curve.samples.size())
        throw std::runtime_error("requested s is not a grid node of the solution");
    return idx;
}

}  // namespace

double torsion_eval(const TorsionPoly& t, double s) {
    return t.b + t.c * std::sin(s) + t.d * std::sin(2 * s) + t.e * std::sin(3 * s);
}

FrenetOdeState pack_frenet(const FrenetState& st) {
    return {st.position.x, st.position.y, st.position.z,
            st.frame.e1.x, st.frame.e1.y, st.frame.e1.z,
            st.frame.e2.x, st.frame.e2.y, st.frame.e2.z,
            st.frame.e3.x, st.frame.e3.y, st.frame.e3.z};
}

FrenetState unpack_frenet(const FrenetOdeState& y) {
    FrenetState st;
    st.position = {y[0], y[1], y[2]};
    st.frame.e1 = {y[3], y[4], y[5]};
    st.frame.e2 = {y[6], y[7], y[8]};
    st.frame.e3 = {y[9], y[10], y[11]};
    return st;
}

FrenetOdeState frenet_rhs(const FrenetOdeState& y, double s, double kappa, const TorsionPoly& t) {
    const double tau = torsion_eval(t, s);
    const Vec3 e1{y[3], y[4], y[5]};
    const Vec3 e2{y[6], y[7], y[8]};
    const Vec3 e3{y[9], y[10], y[11]};
    const Vec3 de1 = kappa * e2;
    const Vec3 de2 = -kappa * e1 - tau * e3;
    const Vec3 de3 = tau * e2;
    return {e1.x, e1.y, e1.z, de1.x, de1.y, de1.z, de2.x, de2.y, de2.z, de3.x, de3.y, de3.z};
}

FrenetState FrenetSolution::at(double s) const {
    const std::size_t idx = grid_index(*this, s);
    return {curve.samples[idx], curve.frames[idx]};
}

FrenetSolution integrate_frenet(double kappa, const TorsionPoly& t, double s_end,
                                const IntegratorConfig& config) {
    if (!(kappa > 0)) throw std::runtime_error("integrate_frenet: kappa must be positive");
    if (!(s_end > 0)) throw std::runtime_error("integrate_frenet: s_end must be positive");

    // Pick the node count so every multiple of pi/2 lands on the grid.
    const double half_pi = kPi / 2;
    std::size_t n_total;
    const double blocks = s_end / half_pi;
    if (std::abs(blocks - std::round(blocks)) < 1e-9) {
        const auto n_sub = std::max<std::size_t>(
            4, static_cast<std::size_t>(std::llround(half_pi / config.step)));
        n_total = static_cast<std::size_t>(std::llround(blocks)) * n_sub;
    } else {
        n_total = std::max<std::size_t>(4, static_cast<std::size_t>(std::llround(s_end / config.step)));
    }

    IntegratorConfig cfg = config;
    cfg.step = s_end / static_cast<double>(n_total);

    auto rhs = [&](double s, const FrenetOdeState& y) { return frenet_rhs(y, s, kappa, t); };
    const auto traj = integrate_fixed(rhs, pack_frenet({{0, 0, 0}, Frame::world()}), 0.0, s_end,
                                      cfg, PostStep<12>{gram_schmidt_post});

    FrenetSolution sol;
    sol.kappa = kappa;
    sol.torsion = t;
    sol.curve.step = cfg.step;
    sol.curve.samples.reserve(traj.size());
    sol.curve.frames.reserve(traj.size());
    for (const auto& node : traj) {
        const FrenetState st = unpack_frenet(node.y);
        sol.curve.samples.push_back(st.position);
        sol.curve.frames.push_back(st.frame);
    }
    sol.curve.meta.construction = "frenet";
    sol.curve.meta.params = {
        {"kappa", kappa}, {"b", t.b}, {"c", t.c}, {"d", t.d}, {"e", t.e}};
    return sol;
}

std::vector<Plane> normal_symmetry_planes(const FrenetSolution& sol) {
    if (sol.torsion.b != 0.0) throw NotSkewSymmetric();
    std::vector<Plane> planes;
    for (int n = 0; n * kPi <= sol.s_end() + 1e-9; ++n) {
        const FrenetState st = sol.at(std::min(n * kPi, sol.s_end()));
        planes.emplace_back(st.position, st.frame.e1);
    }
    return planes;
}

PlaneFamilyAngle plane_family_angle(const FrenetSolution& sol) {
    const auto planes = normal_symmetry_planes(sol);
    if (planes.size() < 3)
        throw std::runtime_error("plane_family_angle: need s_end >= 2 pi for three planes");
    const PlanePencil pencil = plane_pencil(planes[0], planes[1]);

    double consistency = 0;
    const Vec3 a0 = pencil.axis.point;
    const Vec3 a1 = pencil.axis.point + pencil.axis.direction;
    for (std::size_t i = 2; i < planes.size(); ++i) {
        consistency = std::max(consistency, std::abs(planes[i].signed_distance(a0)));
        consistency = std::max(consistency, std::abs(planes[i].signed_distance(a1)));
    }
    return {pencil.axis, pencil.dihedral_angle, consistency};
}

std::vector<Line> rotation_symmetry_normals(const FrenetSolution& sol) {
    if (sol.torsion.d != 0.0) throw NotSymmetric();
    std::vector<Line> lines;
    for (int n = 0; kPi / 2 + n * kPi <= sol.s_end() + 1e-9; ++n) {
        const FrenetState st = sol.at(kPi / 2 + n * kPi);
        lines.emplace_back(st.position, st.frame.e2);
    }
    return lines;
}

double normals_gap(double kappa, double b, double c, double e, const IntegratorConfig& config) {
    const FrenetSolution sol = integrate_frenet(kappa, {b, c, 0, e}, 2 * kPi, config);
    const auto lines = rotation_symmetry_normals(sol);
    const auto geom = line_line_geometry(lines[0], lines[1]);

    const Vec3 delta = geom.closest_point_b - geom.closest_point_a;
    if (delta.norm() == 0) return 0.0;
    Vec3 w = lines[0].direction.cross(lines[1].direction);
    if (w.norm() < 1e-12) w = delta;  // parallel normals: delta is the perpendicular
    double orient = w.dot(sol.at(kPi / 2).frame.e3);
    if (orient == 0) orient = 1;
    return delta.dot(w.normalized()) * (orient > 0 ? 1.0 : -1.0);
}

double adjust_b(double kappa, double c, double e, double b_lo, double b_hi,
                const IntegratorConfig& config) {
    auto gap = [&](double b) { return normals_gap(kappa, b, c, e, config); };
    const double b_star = bisect_on(gap, b_lo, b_hi, 1e-14, 1e-10);

    // Verify: the first four symmetry normals concur.
    const FrenetSolution sol = integrate_frenet(kappa, {b_star, c, 0, e}, 4 * kPi, config);
    const auto lines = rotation_symmetry_normals(sol);
    const auto fit = lines_common_point({lines.begin(), lines.begin() + 4});
    if (fit.max_residual > 1e-7)
        throw std::runtime_error("adjust_b: symmetry normals do not concur after bisection");
    return b_star;
}

double symmetry_angle_planes(const FrenetSolution& sol) {
    return plane_family_angle(sol).angle;
}

double symmetry_angle_normals(double kappa, double b, double c, double e,
                              const IntegratorConfig& config) {
    const FrenetSolution sol = integrate_frenet(kappa, {b, c, 0, e}, 2 * kPi, config);
    const auto lines = rotation_symmetry_normals(sol);
    const double angle = angle_between(lines[0].direction, lines[1].direction);
    if (angle < 1e-9 || angle > kPi - 1e-9)
        throw DegenerateSymmetry("symmetry normals are collinear, angle undefined");
    return angle;
}

double tune_planes(PlanesFree which, double kappa, TorsionPoly t, double lo, double hi,
                   double target_angle, const IntegratorConfig& config) {
    t.b = 0;
    auto objective = [&](double x) {
        double k = kappa;
        TorsionPoly tp = t;
        if (which == PlanesFree::c) tp.c = x;
        else k = x;
        const FrenetSolution sol = integrate_frenet(k, tp, 2 * kPi, config);
        return symmetry_angle_planes(sol) - target_angle;
    };
    return bisect_on(objective, lo, hi, 1e-14, 1e-9);
}

NormalsTuning tune_normals(NormalsFree which, double kappa, double c, double e, double lo,
                           double hi, double b_lo, double b_hi, double target_angle,
                           const IntegratorConfig& config) {
    double b_last = 0;
    auto objective = [&](double x) {
        const double cc = which == NormalsFree::c ? x : c;
        const double ee = which == NormalsFree::e ? x : e;
        b_last = adjust_b(kappa, cc, ee, b_lo, b_hi, config);
        return symmetry_angle_normals(kappa, b_last, cc, ee, config) - target_angle;
    };
    const double value = bisect_on(objective, lo, hi, 1e-14, 1e-9);
    objective(value);  // refresh b_last for the returned value
    return {value, b_last};
}

AssembledClosed assemble_closed(double kappa, const TorsionPoly& t,
                                const IntegratorConfig& config, int max_multiples) {
    if (max_multiples < 1) throw std::runtime_error("assemble_closed: max_multiples must be >= 1");
    for (int m = 1; m <= max_multiples; ++m) {
        FrenetSolution sol = integrate_frenet(kappa, t, m * kPi, config);
        const FrenetState first = sol.at(0), last = sol.at(sol.s_end());
        const double pos_gap = distance(first.position, last.position);
        const double tan_gap = angle_between(first.frame.e1, last.frame.e1);
        if (pos_gap < 1e-6 && tan_gap < 1e-6) {
            sol.curve.meta.params["periods"] = m;
            return {std::move(sol), m};
        }
    }
    throw ClosureNotReached();
}

}  // namespace constcurve
