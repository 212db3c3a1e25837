#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace constcurve {

struct NonFiniteDerivative : std::runtime_error {
    NonFiniteDerivative() : std::runtime_error("derivative evaluated non-finite") {}
};
struct EventNotFound : std::runtime_error {
    EventNotFound() : std::runtime_error("event indicator did not change sign before max_length") {}
};

enum class Method { rk4 };
enum class EventDirection { rising, falling, any };

struct IntegratorConfig {
    double step = 1e-3;
    Method method = Method::rk4;
    double max_length = 100.0;
    double event_tolerance = 1e-10;
};

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
struct TrajectoryPoint {
    double s;
    State<N> y;
};

template <std::size_t N>
using PostStep = std::function<void(double, State<N>&)>;

template <std::size_t N>
struct EventSpec {
    std::function<double(double, const State<N>&)> indicator;
    EventDirection direction = EventDirection::any;
};

template <std::size_t N>
struct EventResult {
    std::vector<TrajectoryPoint<N>> trajectory;  // ends at the event state
    double event_s = 0;
    State<N> event_state{};
};

namespace detail {

template <std::size_t N>
bool finite(const State<N>& y) {
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}

template <std::size_t N, class F>
State<N> rk4_step(F&& f, double s, const State<N>& y, double h) {
    const State<N> k1 = f(s, y);
    State<N> tmp;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    const State<N> k2 = f(s + 0.5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    const State<N> k3 = f(s + 0.5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * k3[i];
    const State<N> k4 = f(s + h, tmp);
    if (!finite(k1) || !finite(k2) || !finite(k3) || !finite(k4)) throw NonFiniteDerivative();
    State<N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
    return out;
}

// Cubic Hermite interpolant of one step, theta in [0, 1].
template <std::size_t N>
State<N> hermite(const State<N>& ya, const State<N>& fa, const State<N>& yb, const State<N>& fb,
                 double h, double theta) {
    const double t2 = theta * theta, t3 = t2 * theta;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + theta;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    State<N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = h00 * ya[i] + h10 * h * fa[i] + h01 * yb[i] + h11 * h * fb[i];
    return out;
}

inline bool crossing_matches(double ga, double gb, EventDirection dir) {
    // Requires a strict sign on the left node so that a trajectory started
    // exactly on an event (indicator 0) does not re-trigger immediately.
    const bool rising = ga < 0.0 && gb >= 0.0;
    const bool falling = ga > 0.0 && gb <= 0.0;
    switch (dir) {
        case EventDirection::rising: return rising;
        case EventDirection::falling: return falling;
        case EventDirection::any: return rising || falling;
    }
    return false;
}

}  // namespace detail

/// Classical fixed-step RK4 over [s0, s1] with a final partial step landing
/// exactly on s1. The trajectory includes both endpoints. `post` (when set)
/// is applied after every accepted step, e.g. frame re-orthonormalization
/// or surface projection.
template <std::size_t N, class F>
std::vector<TrajectoryPoint<N>> integrate_fixed(F&& deriv, const State<N>& y0, double s0, double s1,
                                                const IntegratorConfig& config,
                                                const PostStep<N>& post = nullptr) {
    if (!(s1 > s0)) throw std::runtime_error("integrate_fixed: need s1 > s0");
    if (!(config.step > 0)) throw std::runtime_error("integrate_fixed: step must be positive");

    std::vector<TrajectoryPoint<N>> traj;
    traj.reserve(static_cast<std::size_t>((s1 - s0) / config.step) + 2);
    traj.push_back({s0, y0});

    double s = s0;
    State<N> y = y0;
    std::size_t k = 0;
    while (s < s1) {
        // Grid nodes are computed as s0 + k*step (no accumulation drift);
        // the final step snaps to s1.
        double s_next = s0 + static_cast<double>(++k) * config.step;
        if (s_next > s1 - 1e-12 * config.step) s_next = s1;
        y = detail::rk4_step(deriv, s, y, s_next - s);
        s = s_next;
        if (post) post(s, y);
        traj.push_back({s, y});
    }
    return traj;
}

/// Continues one trajectory through `n_events` indicator crossings; event
/// k's result trajectory covers the run from s0 up to that event. Grid
/// nodes between events are shared, so restarting exactly on a zero of the
/// indicator never happens.
template <std::size_t N, class F>
std::vector<EventResult<N>> integrate_collect_events(F&& deriv, const State<N>& y0, double s0,
                                                     const EventSpec<N>& event, std::size_t n_events,
                                                     const IntegratorConfig& config,
                                                     const PostStep<N>& post = nullptr) {
    if (!(config.step > 0)) throw std::runtime_error("integrate_collect_events: step must be positive");
    if (n_events == 0) throw std::runtime_error("integrate_collect_events: n_events must be >= 1");

    std::vector<TrajectoryPoint<N>> traj;
    traj.push_back({s0, y0});
    std::vector<EventResult<N>> found;

    double s = s0;
    State<N> y = y0;
    double g_prev = event.indicator(s, y);

    const double s_max = s0 + config.max_length;
    while (s < s_max) {
        const double h = std::min(config.step, s_max - s);
        State<N> yb = detail::rk4_step(deriv, s, y, h);
        double sb = s + h;
        if (post) post(sb, yb);
        const double g_next = event.indicator(sb, yb);

        if (detail::crossing_matches(g_prev, g_next, event.direction)) {
            // Bisect the Hermite interpolant of this step for the crossing.
            const State<N> fa = deriv(s, y);
            const State<N> fb = deriv(sb, yb);
            double lo = 0.0, hi = 1.0;
            double g_lo = g_prev;
            while ((hi - lo) * h > config.event_tolerance) {
                const double mid = 0.5 * (lo + hi);
                const State<N> ym = detail::hermite(y, fa, yb, fb, h, mid);
                const double gm = event.indicator(s + mid * h, ym);
                if ((g_lo < 0) == (gm < 0) && gm != 0.0) {
                    lo = mid;
                    g_lo = gm;
                } else {
                    hi = mid;
                }
            }
            const double theta = 0.5 * (lo + hi);
            EventResult<N> ev;
            ev.event_s = s + theta * h;
            ev.event_state = detail::hermite(y, fa, yb, fb, h, theta);
            if (post) post(ev.event_s, ev.event_state);
            ev.trajectory = traj;
            ev.trajectory.push_back({ev.event_s, ev.event_state});
            found.push_back(std::move(ev));
            if (found.size() == n_events) return found;
        }

        s = sb;
        y = yb;
        g_prev = g_next;
        traj.push_back({s, y});
    }
    throw EventNotFound();
}

/// Integrates until the event indicator crosses zero in the requested
/// direction, then refines the crossing on a cubic Hermite interpolant of
/// the bracketing step by bisection to config.event_tolerance (in s).
/// Throws EventNotFound after config.max_length.
template <std::size_t N, class F>
EventResult<N> integrate_until_event(F&& deriv, const State<N>& y0, double s0,
                                     const EventSpec<N>& event, const IntegratorConfig& config,
                                     const PostStep<N>& post = nullptr) {
    auto res = integrate_collect_events(deriv, y0, s0, event, 1, config, post);
    return std::move(res.front());
}

}  // namespace constcurve
