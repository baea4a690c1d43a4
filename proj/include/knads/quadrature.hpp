#pragma once

#include <array>
#include <cstddef>

namespace knads::quad {

// Gauss-Legendre nodes and weights on [−1, 1].
template <std::size_t N>
struct Rule {
    std::array<double, N> x;
    std::array<double, N> w;
};

const Rule<20>& gl20();
const Rule<10>& gl10();

// ∫_a^b f with the fixed 20-point rule.
template <class F>
double gl20_integrate(F&& f, double a, double b) {
    const auto& R = gl20();
    double c = 0.5 * (a + b), h = 0.5 * (b - a), s = 0.0;
    for (std::size_t i = 0; i < 20; ++i) s += R.w[i] * f(c + h * R.x[i]);
    return s * h;
}

template <class F>
double gl10_integrate(F&& f, double a, double b) {
    const auto& R = gl10();
    double c = 0.5 * (a + b), h = 0.5 * (b - a), s = 0.0;
    for (std::size_t i = 0; i < 10; ++i) s += R.w[i] * f(c + h * R.x[i]);
    return s * h;
}

// Adaptive bisection on the GL10/GL20 discrepancy. Returns false when the panel
// budget runs out before the tolerance is met.
template <class F>
bool adaptive_integrate(F&& f, double a, double b, double rel_tol, double abs_tol, double& out,
                        int depth = 0) {
    double fine = gl20_integrate(f, a, b);
    double coarse = gl10_integrate(f, a, b);
    double err = fine - coarse;
    if (err < 0) err = -err;
    double scale = fine < 0 ? -fine : fine;
    if (err <= rel_tol * scale + abs_tol) {
        out = fine;
        return true;
    }
    if (depth >= 30) {
        out = fine;
        return false;
    }
    double m = 0.5 * (a + b), left = 0.0, right = 0.0;
    bool ok = adaptive_integrate(f, a, m, rel_tol, 0.5 * abs_tol, left, depth + 1);
    ok = adaptive_integrate(f, m, b, rel_tol, 0.5 * abs_tol, right, depth + 1) && ok;
    out = left + right;
    return ok;
}

}  // namespace knads::quad
