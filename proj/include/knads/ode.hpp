#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "knads/errors.hpp"

namespace knads::ode {

struct Tolerance {
    double abs = 1e-12;
    double rel = 1e-12;
};

struct Stats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

// Dormand-Prince 5(4) with a caller-supplied step cap. cap(t) bounds |dt| at t
// (used to keep steps below θ/4 near singular endpoints). obs(t, x) runs after
// every accepted step and may return false to stop early.
template <std::size_t N, class Rhs, class Cap, class Obs>
Stats integrate(Rhs&& rhs, std::array<double, N>& x, double t0, double t1, double dt0,
                Tolerance tol, Cap&& cap, Obs&& obs, std::size_t max_steps = 2000000) {
    using State = std::array<double, N>;
    namespace oi = boost::numeric::odeint;
    auto stepper = oi::make_controlled(tol.abs, tol.rel, oi::runge_kutta_dopri5<State>());
    auto sys = [&](const State& s, State& ds, double t) { rhs(t, s, ds); };

    Stats st;
    const double dir = t1 >= t0 ? 1.0 : -1.0;
    double t = t0;
    double dt = dir * std::abs(dt0);
    State dxdt;
    sys(x, dxdt, t);
    while (dir * (t1 - t) > 0.0) {
        double c = cap(t);
        if (std::abs(dt) > c) dt = dir * c;
        if (dir * (t + dt - t1) > 0.0) dt = t1 - t;
        double t_prev = t;
        auto res = stepper.try_step(sys, x, dxdt, t, dt);
        if (res == oi::success) {
            ++st.accepted;
            if (!obs(t, x)) break;
        } else {
            ++st.rejected;
        }
        if (st.accepted + st.rejected > max_steps)
            throw Error(ErrorCode::IntegratorStall, "step budget exhausted");
        if (t == t_prev && std::abs(dt) < 1e-300)
            throw Error(ErrorCode::IntegratorStall, "step size underflow");
        for (double v : x)
            if (!std::isfinite(v)) throw Error(ErrorCode::IntegratorStall, "non-finite state");
    }
    return st;
}

template <std::size_t N, class Rhs>
Stats integrate(Rhs&& rhs, std::array<double, N>& x, double t0, double t1, double dt0,
                Tolerance tol = {}) {
    return integrate<N>(
        rhs, x, t0, t1, dt0, tol, [](double) { return std::numeric_limits<double>::infinity(); },
        [](double, const std::array<double, N>&) { return true; });
}

}  // namespace knads::ode
