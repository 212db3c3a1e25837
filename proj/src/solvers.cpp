#include "constcurve/solvers.hpp"

#include <cmath>

namespace constcurve {

std::optional<Bracket> scan_for_bracket(const std::function<double(double)>& f,
                                        const std::vector<double>& grid) {
    if (grid.size() < 2) return std::nullopt;
    double f_prev = f(grid[0]);
    if (f_prev == 0.0) return Bracket{grid[0], grid[0], 0.0, 0.0};
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double f_cur = f(grid[i]);
        if (f_cur == 0.0) return Bracket{grid[i], grid[i], 0.0, 0.0};
        if ((f_prev < 0) != (f_cur < 0)) return Bracket{grid[i - 1], grid[i], f_prev, f_cur};
        f_prev = f_cur;
    }
    return std::nullopt;
}

double bisect(const std::function<double(double)>& f, Bracket b,
              double x_tol, double f_tol, int max_iter) {
    if (b.lo == b.hi) return b.lo;  // degenerate bracket from an exact grid zero
    if (!(b.lo < b.hi) || b.f_lo * b.f_hi > 0)
        throw std::runtime_error("bisect: invalid bracket");
    if (std::abs(b.f_lo) <= f_tol) return b.lo;
    if (std::abs(b.f_hi) <= f_tol) return b.hi;

    for (int it = 0; it < max_iter; ++it) {
        const double mid = 0.5 * (b.lo + b.hi);
        const double f_mid = f(mid);
        if (std::abs(f_mid) <= f_tol || (b.hi - b.lo) <= x_tol) return mid;
        if ((f_mid < 0) == (b.f_lo < 0)) {
            b.lo = mid;
            b.f_lo = f_mid;
        } else {
            b.hi = mid;
            b.f_hi = f_mid;
        }
    }
    throw MaxIterExceeded();
}

double bisect_on(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol, double f_tol, int max_iter) {
    const double f_lo = f(lo), f_hi = f(hi);
    if (std::abs(f_lo) <= f_tol) return lo;
    if (std::abs(f_hi) <= f_tol) return hi;
    if ((f_lo < 0) == (f_hi < 0)) throw NoBracket();
    return bisect(f, Bracket{lo, hi, f_lo, f_hi}, x_tol, f_tol, max_iter);
}

}  // namespace constcurve
