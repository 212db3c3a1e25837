#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace constcurve {

struct NoBracket : std::runtime_error {
    NoBracket() : std::runtime_error("objective has no sign change over the bracket") {}
};
struct MaxIterExceeded : std::runtime_error {
    MaxIterExceeded() : std::runtime_error("bisection exceeded max_iter without meeting tolerance") {}
};

struct Bracket {
    double lo, hi;
    double f_lo, f_hi;
};

/// First adjacent grid pair with a sign change of f (leftmost wins).
/// An exact zero at a grid point yields a zero-width bracket there.
std::optional<Bracket> scan_for_bracket(const std::function<double(double)>& f,
                                        const std::vector<double>& grid);

/// Plain midpoint bisection. Returns x once the bracket width is <= x_tol
/// or |f(x)| <= f_tol. Never evaluates f outside the initial bracket.
double bisect(const std::function<double(double)>& f, Bracket bracket,
              double x_tol, double f_tol, int max_iter = 200);

/// Convenience: checks the endpoints for a sign change (throws NoBracket)
/// and bisects.
double bisect_on(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol, double f_tol, int max_iter = 200);

}  // namespace constcurve
