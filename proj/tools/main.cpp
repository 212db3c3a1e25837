#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "constcurve/curve_file.hpp"
#include "constcurve/cylinder.hpp"
#include "constcurve/export.hpp"
#include "constcurve/frenet.hpp"
#include "constcurve/solvers.hpp"
#include "constcurve/torus.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidArguments : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "P/Q" -> pi * P / Q
double parse_target_angle(const std::string& text, int& q_out) {
    int p = 0, q = 0;
    if (std::sscanf(text.c_str(), "%d/%d", &p, &q) != 2 || p <= 0 || q <= 0)
        throw InvalidArguments("--target expects a rational P/Q with positive integers");
    q_out = q;
    return kPi * p / q;
}

void write_output(const constcurve::SampledCurve& curve, double kappa, const std::string& path) {
    const auto file = constcurve::CurveFile::from_curve(curve, kappa);
    constcurve::write_curve_file(file, path);
    std::cout << "wrote " << path << ": construction=" << file.construction
              << " samples=" << file.samples.size()
              << " length=" << file.closure.length
              << " position_gap=" << file.closure.position_gap << "\n";
}

int run_cylinder(double R, double kappa, int halfperiods, double alpha0, double length,
                 double step, double max_length, const std::string& out) {
    constcurve::IntegratorConfig cfg{step, constcurve::Method::rk4, max_length};
    constcurve::SampledCurve planar;
    if (std::abs(kappa - 1.0 / R) <= 1e-12 / R) {
        planar = constcurve::asymptotic_spiral(R, alpha0, length, cfg).curve;
    } else if (kappa > 1.0 / R) {
        planar = constcurve::convex_closed_curve(kappa, R, cfg);
    } else {
        planar = constcurve::oscillating_curve(kappa, R, halfperiods, cfg).curve;
    }
    write_output(constcurve::roll_to_cylinder(planar, R), kappa, out);
    return 0;
}

int run_torus(double A, double r, double kappa, const std::string& family,
              const std::string& start, int halfwaves, double theta_lo, double theta_hi,
              int wrap, double step, double max_length, const std::string& out) {
    constcurve::TorusParams params{A, r};
    constcurve::IntegratorConfig cfg{step, constcurve::Method::rk4, max_length};
    if (family == "symmetric") {
        const auto eq = start == "inner" ? constcurve::EquatorStart::inner
                                         : constcurve::EquatorStart::outer;
        write_output(constcurve::symmetric_closed_curve(kappa, eq, params, cfg), kappa, out);
    } else if (family == "oscillating") {
        const auto res =
            constcurve::oscillating_closed_curve(halfwaves, params, theta_lo, theta_hi, cfg, wrap);
        std::cout << "shooting converged: theta0=" << res.theta0 << " kappa=" << res.kappa
                  << " delta_u=" << res.delta_u << "\n";
        write_output(res.curve, res.kappa, out);
    } else {
        throw InvalidArguments("--family must be symmetric or oscillating");
    }
    return 0;
}

int run_frenet_planes(double kappa, double c, double d, double e, const std::string& target,
                      const std::string& tune, double lo, double hi, double step,
                      int max_multiples, const std::string& out) {
    constcurve::IntegratorConfig cfg{step, constcurve::Method::rk4, 1e6};
    constcurve::TorsionPoly t{0, c, d, e};
    if (!target.empty()) {
        int q = 0;
        const double angle = parse_target_angle(target, q);
        const auto which = tune == "kappa" ? constcurve::PlanesFree::kappa
                                           : constcurve::PlanesFree::c;
        const double value = constcurve::tune_planes(which, kappa, t, lo, hi, angle, cfg);
        if (which == constcurve::PlanesFree::c) t.c = value;
        else kappa = value;
        std::cout << "tuned " << tune << "=" << constcurve::format_double(value)
                  << " for angle " << target << " pi\n";
        max_multiples = 4 * q;
    }
    const auto closed = constcurve::assemble_closed(kappa, t, cfg, max_multiples);
    std::cout << "closed at s = " << closed.periods << " pi\n";
    write_output(closed.solution.curve, kappa, out);
    return 0;
}

int run_frenet_normals(double kappa, double c, double e, const std::string& target,
                       const std::string& tune, double lo, double hi, double b_lo, double b_hi,
                       bool require_positive_torsion, double step, const std::string& out) {
    constcurve::IntegratorConfig cfg{step, constcurve::Method::rk4, 1e6};
    int q = 0;
    const double angle = parse_target_angle(target, q);
    const auto which =
        tune == "c" ? constcurve::NormalsFree::c : constcurve::NormalsFree::e;
    const auto tuned =
        constcurve::tune_normals(which, kappa, c, e, lo, hi, b_lo, b_hi, angle, cfg);
    constcurve::TorsionPoly t{tuned.b, which == constcurve::NormalsFree::c ? tuned.value : c, 0,
                              which == constcurve::NormalsFree::e ? tuned.value : e};
    std::cout << "tuned " << tune << "=" << constcurve::format_double(tuned.value)
              << " b=" << constcurve::format_double(tuned.b) << " for angle " << target
              << " pi\n";

    if (require_positive_torsion) {
        double min_tau = 1e300;
        for (int i = 0; i < 4096; ++i)
            min_tau = std::min(min_tau, constcurve::torsion_eval(t, 2 * kPi * i / 4096.0));
        if (min_tau <= 0)
            throw VerificationFailure("tuned torsion is not positive everywhere (min " +
                                      std::to_string(min_tau) + ")");
    }

    const auto closed = constcurve::assemble_closed(kappa, t, cfg, 4 * q);
    std::cout << "closed at s = " << closed.periods << " pi\n";
    write_output(closed.solution.curve, kappa, out);
    return 0;
}

int run_verify(const std::string& path, double kappa_override, bool has_kappa, double tol) {
    const auto file = constcurve::read_curve_file(path);
    const auto curve = file.to_curve();
    const double kappa = has_kappa ? kappa_override : file.kappa;

    const auto closure = constcurve::closure_report(curve);
    const auto inv = constcurve::discrete_invariants(curve);
    double max_err = 0;
    for (double k : inv.kappa) max_err = std::max(max_err, std::abs(k - kappa));

    std::cout << "samples: " << curve.samples.size() << "\n";
    std::cout << "length: " << closure.length << "\n";
    std::cout << "position_gap: " << closure.position_gap << "\n";
    std::cout << "tangent_gap: " << closure.tangent_gap << "\n";
    std::cout << "max |discrete kappa - " << kappa << "|: " << max_err << " (tol " << tol
              << ")\n";
    if (!(max_err <= tol))
        throw VerificationFailure("curvature deviates from the declared kappa");
    std::cout << "OK\n";
    return 0;
}

int run_export(const std::string& path, const std::string& format, const std::string& view_name,
               std::string out_path) {
    const auto file = constcurve::read_curve_file(path);
    if (out_path.empty())
        out_path = std::filesystem::path(path).replace_extension(format).string();

    if (format == "json") {
        constcurve::write_curve_file(file, out_path);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
        if (format == "csv") {
            constcurve::export_csv(file, out);
        } else if (format == "obj") {
            constcurve::export_obj(file, out);
        } else if (format == "ply") {
            constcurve::export_ply(file, out);
        } else if (format == "svg") {
            auto view = constcurve::SvgView::xy;
            if (view_name == "xz") view = constcurve::SvgView::xz;
            else if (view_name == "yz") view = constcurve::SvgView::yz;
            else if (view_name != "xy") throw InvalidArguments("--view must be xy, xz or yz");
            constcurve::export_svg(file, out, view);
        } else {
            throw InvalidArguments("--format must be json, csv, obj, ply or svg");
        }
    }
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construction and verification of closed constant curvature space curves"};
    app.require_subcommand(1);

    // cylinder
    auto* cyl = app.add_subcommand("cylinder", "Roll a planar solution onto a cylinder");
    double cyl_R = 1, cyl_kappa = 2, cyl_alpha0 = 0.1, cyl_length = 50, cyl_step = 1e-3,
           cyl_max_length = 200;
    int cyl_halfperiods = 6;
    std::string cyl_out;
    cyl->add_option("--radius", cyl_R, "Cylinder radius R")->required()->check(CLI::PositiveNumber);
    cyl->add_option("--kappa", cyl_kappa, "Target space curvature")->required()->check(CLI::PositiveNumber);
    cyl->add_option("--halfperiods", cyl_halfperiods, "Turning events for kappa < 1/R");
    cyl->add_option("--alpha0", cyl_alpha0, "Initial angle for kappa = 1/R");
    cyl->add_option("--length", cyl_length, "Arclength for kappa = 1/R");
    cyl->add_option("--step", cyl_step, "Arclength step")->check(CLI::PositiveNumber);
    cyl->add_option("--max-length", cyl_max_length, "Integration cap for event search");
    cyl->add_option("--out", cyl_out, "Output curve file")->required();

    // torus
    auto* tor = app.add_subcommand("torus", "Constant curvature curves on a torus of revolution");
    double tor_A = 2, tor_r = 1, tor_kappa = 1.5, tor_step = 1e-3, tor_max_length = 500;
    std::vector<double> tor_bracket{0.05, 1.4};
    int tor_halfwaves = 8, tor_wrap = 1;
    std::string tor_family, tor_start = "outer", tor_out;
    tor->add_option("--big-radius", tor_A, "Center-circle radius A")->required()->check(CLI::PositiveNumber);
    tor->add_option("--tube-radius", tor_r, "Tube radius r")->required()->check(CLI::PositiveNumber);
    tor->add_option("--kappa", tor_kappa, "Space curvature (symmetric family)");
    tor->add_option("--family", tor_family, "symmetric | oscillating")->required();
    tor->add_option("--start", tor_start, "inner | outer equator (symmetric family)");
    tor->add_option("--halfwaves", tor_halfwaves, "Even half-wave count (oscillating family)");
    tor->add_option("--bracket", tor_bracket, "theta0 bracket (oscillating family)")->expected(2);
    tor->add_option("--wrap", tor_wrap, "Axis wraps before closing (oscillating family)");
    tor->add_option("--step", tor_step, "Arclength step")->check(CLI::PositiveNumber);
    tor->add_option("--max-length", tor_max_length, "Integration cap for event search");
    tor->add_option("--out", tor_out, "Output curve file")->required();

    // frenet-planes
    auto* fpl = app.add_subcommand("frenet-planes",
                                   "Frenet curves with skew-symmetric torsion (normal-plane symmetry)");
    double fpl_kappa = 1, fpl_c = 0, fpl_d = 0, fpl_e = 0, fpl_step = 1e-3;
    std::vector<double> fpl_bracket{0.1, 3.0};
    int fpl_max_multiples = 40;
    std::string fpl_target, fpl_tune = "c", fpl_out;
    fpl->add_option("--kappa", fpl_kappa, "Constant curvature")->check(CLI::PositiveNumber);
    fpl->add_option("--c", fpl_c, "Coefficient of sin(s)")->required();
    fpl->add_option("--d", fpl_d, "Coefficient of sin(2s)");
    fpl->add_option("--e", fpl_e, "Coefficient of sin(3s)");
    fpl->add_option("--target", fpl_target, "Plane angle target P/Q (times pi)");
    fpl->add_option("--tune", fpl_tune, "Free parameter: c | kappa");
    fpl->add_option("--bracket", fpl_bracket, "Bracket for the tuned parameter")->expected(2);
    fpl->add_option("--max-multiples", fpl_max_multiples, "Closure search cap (multiples of pi)");
    fpl->add_option("--step", fpl_step, "Arclength step")->check(CLI::PositiveNumber);
    fpl->add_option("--out", fpl_out, "Output curve file")->required();

    // frenet-normals
    auto* fno = app.add_subcommand("frenet-normals",
                                   "Frenet curves with symmetric torsion (rotation-normal symmetry)");
    double fno_kappa = 1, fno_c = 0, fno_e = 0, fno_step = 1e-3;
    std::vector<double> fno_bracket{0.1, 3.0}, fno_b_bracket{-1.0, 1.0};
    bool fno_positive = false;
    std::string fno_target, fno_tune = "e", fno_out;
    fno->add_option("--kappa", fno_kappa, "Constant curvature")->check(CLI::PositiveNumber);
    fno->add_option("--c", fno_c, "Coefficient of sin(s)")->required();
    fno->add_option("--e", fno_e, "Coefficient of sin(3s)");
    fno->add_option("--target", fno_target, "Normal angle target P/Q (times pi)")->required();
    fno->add_option("--tune", fno_tune, "Free parameter: c | e");
    fno->add_option("--bracket", fno_bracket, "Bracket for the tuned parameter")->expected(2);
    fno->add_option("--b-bracket", fno_b_bracket, "Bracket for the b adjustment")->expected(2);
    fno->add_flag("--require-positive-torsion", fno_positive, "Reject solutions with tau <= 0");
    fno->add_option("--step", fno_step, "Arclength step")->check(CLI::PositiveNumber);
    fno->add_option("--out", fno_out, "Output curve file")->required();

    // verify
    auto* ver = app.add_subcommand("verify", "Recompute discrete invariants and closure");
    std::string ver_file;
    double ver_kappa = 0, ver_tol = 1e-3;
    ver->add_option("file", ver_file, "Curve file")->required();
    auto* ver_kappa_opt = ver->add_option("--kappa", ver_kappa, "Expected curvature (default: from file)");
    ver->add_option("--tol", ver_tol, "Curvature tolerance");

    // export
    auto* exp = app.add_subcommand("export", "Convert a curve file to json, csv, obj, ply or svg");
    std::string exp_file, exp_format, exp_view = "xy", exp_out;
    exp->add_option("file", exp_file, "Curve file")->required();
    exp->add_option("--format", exp_format, "json | csv | obj | ply | svg")->required();
    exp->add_option("--view", exp_view, "Projection for svg: xy | xz | yz");
    exp->add_option("--out", exp_out, "Output path (default: input with new extension)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 4;
    }

    try {
        if (cyl->parsed())
            return run_cylinder(cyl_R, cyl_kappa, cyl_halfperiods, cyl_alpha0, cyl_length,
                                cyl_step, cyl_max_length, cyl_out);
        if (tor->parsed())
            return run_torus(tor_A, tor_r, tor_kappa, tor_family, tor_start, tor_halfwaves,
                             tor_bracket[0], tor_bracket[1], tor_wrap, tor_step, tor_max_length,
                             tor_out);
        if (fpl->parsed())
            return run_frenet_planes(fpl_kappa, fpl_c, fpl_d, fpl_e, fpl_target, fpl_tune,
                                     fpl_bracket[0], fpl_bracket[1], fpl_step, fpl_max_multiples,
                                     fpl_out);
        if (fno->parsed())
            return run_frenet_normals(fno_kappa, fno_c, fno_e, fno_target, fno_tune,
                                      fno_bracket[0], fno_bracket[1], fno_b_bracket[0],
                                      fno_b_bracket[1], fno_positive, fno_step, fno_out);
        if (ver->parsed())
            return run_verify(ver_file, ver_kappa, ver_kappa_opt->count() > 0, ver_tol);
        if (exp->parsed()) return run_export(exp_file, exp_format, exp_view, exp_out);
    } catch (const constcurve::NoBracket& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const constcurve::EventNotFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const constcurve::ClosureNotReached& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 3;
    } catch (const InvalidArguments& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
