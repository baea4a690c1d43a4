#include "knads/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "knads/errors.hpp"

namespace knads {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kExtremalRel = 1e-8;

template <class F>
double bisect(F&& f, double lo, double hi, double flo) {
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-14 * std::max(1.0, std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

double newton_polish(const BlackHoleParams& p, double r, double lo, double hi) {
    double d1 = delta_r_d1(p, r);
    if (d1 == 0.0) return r;
    double rn = r - delta_r(p, r) / d1;
    if (rn < lo || rn > hi) return r;
    return std::abs(delta_r(p, rn)) <= std::abs(delta_r(p, r)) ? rn : r;
}

// Sum of absolute terms of Δr at r: the rounding scale of its evaluation.
double delta_scale(const BlackHoleParams& p, double r) {
    double l2 = p.l * p.l;
    return (r * r + p.a * p.a) * (1.0 + r * r / l2) + 2.0 * std::abs(p.m) * r + p.z2();
}

}  // namespace

void validate(const BlackHoleParams& p) {
    if (!(std::isfinite(p.m) && std::isfinite(p.a) && std::isfinite(p.q_e) &&
          std::isfinite(p.q_m) && std::isfinite(p.l)))
        throw Error(ErrorCode::InvalidParams, "non-finite black-hole parameter");
    if (!(p.l > 0.0)) throw Error(ErrorCode::InvalidParams, "l must be positive");
    if (!(p.a * p.a < p.l * p.l)) throw Error(ErrorCode::InvalidParams, "need a^2 < l^2");
    if (p.m < 0.0) throw Error(ErrorCode::InvalidParams, "m must be non-negative");
}

double delta_r(const BlackHoleParams& p, double r) {
    double r2 = r * r;
    return (r2 + p.a * p.a) * (1.0 + r2 / (p.l * p.l)) - 2.0 * p.m * r + p.z2();
}

double delta_r_d1(const BlackHoleParams& p, double r) {
    double l2 = p.l * p.l;
    return 4.0 * r * r * r / l2 + 2.0 * r * (1.0 + p.a * p.a / l2) - 2.0 * p.m;
}

double delta_r_d2(const BlackHoleParams& p, double r) {
    double l2 = p.l * p.l;
    return 12.0 * r * r / l2 + 2.0 * (1.0 + p.a * p.a / l2);
}

double delta_theta(const BlackHoleParams& p, double theta) {
    double c = std::cos(theta);
    return 1.0 - (p.a * p.a) / (p.l * p.l) * c * c;
}

HorizonData find_horizons(const BlackHoleParams& p) {
    validate(p);
    const double l2 = p.l * p.l;

    // Δr is strictly convex on r ≥ 0 and Δr'(0) = −2m ≤ 0, so the minimiser is unique.
    double hi = std::min(std::cbrt(0.5 * p.m * l2), p.m) * (1.0 + 1e-12) + 1e-300;
    auto d1 = [&](double r) { return delta_r_d1(p, r); };
    double r_star = 0.0;
    if (p.m > 0.0) {
        while (d1(hi) < 0.0) hi *= 2.0;
        r_star = bisect(d1, 0.0, hi, d1(0.0));
    }
    const double dmin = delta_r(p, r_star);
    const double tol_double =
        std::max(delta_r_d2(p, r_star) * std::pow(kExtremalRel * r_star, 2) / 8.0,
                 64.0 * kEps * delta_scale(p, r_star));

    HorizonData hz;
    if (dmin > tol_double) throw Error(ErrorCode::NoHorizon, "m below the extremal mass");
    if (std::abs(dmin) <= tol_double) {
        hz.r_plus = r_star;
        hz.r_minus = r_star;
        hz.all_real_roots = {r_star, r_star};
        hz.extremal = true;
        hz.residual = std::abs(dmin);
        return hz;
    }

    auto f = [&](double r) { return delta_r(p, r); };
    double r_max = std::min(std::cbrt(2.0 * p.m * l2), 2.0 * p.m) * (1.0 + 1e-4) + 1e-300;
    while (f(r_max) <= 0.0) r_max *= 2.0;

    double r_minus = 0.0;
    double f0 = f(0.0);
    if (f0 > 0.0) {
        r_minus = bisect(f, 0.0, r_star, f0);
        r_minus = newton_polish(p, r_minus, 0.0, r_star);
    }
    double r_plus = bisect(f, r_star, r_max, dmin);
    r_plus = newton_polish(p, r_plus, r_star, r_max);

    hz.r_plus = r_plus;
    hz.r_minus = r_minus;
    hz.all_real_roots = {r_minus, r_plus};
    hz.extremal = (r_plus - r_minus) <= kExtremalRel * r_plus;
    hz.residual = std::abs(f(r_plus));
    return hz;
}

bool is_nonextremal(const BlackHoleParams& p) {
    try {
        return !find_horizons(p).extremal;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NoHorizon) return false;
        throw;
    }
}

double extremal_mass(double a, double z2, double l) {
    double al2 = a * a / (l * l);
    double root = std::sqrt((1.0 + al2) * (1.0 + al2) + 12.0 / (l * l) * (a * a + z2));
    double inner = std::max(0.0, root - al2 - 1.0);
    return l / (3.0 * std::sqrt(6.0)) * (root + 2.0 * al2 + 2.0) * std::sqrt(inner);
}

Komar komar(const BlackHoleParams& p) {
    double xi = p.xi();
    if (!(xi > 0.0)) throw Error(ErrorCode::InvalidParams, "Xi must be positive");
    return {p.m / (xi * xi), p.a * p.m / (xi * xi), p.q_e / xi, p.q_m / xi};
}

Reparam reparameterize(double r_plus, double r_minus, double a, double l) {
    if (!(l > 0.0) || !(a * a < l * l))
        throw Error(ErrorCode::InvalidRoots, "need l > 0 and a^2 < l^2");
    if (!(r_minus >= 0.0) || !(r_plus >= r_minus))
        throw Error(ErrorCode::InvalidRoots, "need r_plus >= r_minus >= 0");
    double l2 = l * l;
    double s = r_plus + r_minus;
    double pr = r_plus * r_minus;
    double sq = r_plus * r_plus + r_minus * r_minus;
    double m = s * (sq + a * a + l2) / (2.0 * l2);
    double z2 = pr * (sq + pr + a * a + l2) / l2 - a * a;
    if (z2 < -64.0 * kEps * std::max(1.0, a * a)) throw Error(ErrorCode::InvalidRoots, "z^2 < 0");
    return {m, std::max(0.0, z2)};
}

double reparam_jacobian(double r_plus, double r_minus, double a, double l) {
    double l2 = l * l;
    double rp = r_plus, rm = r_minus, c = a * a + l2;
    return (3 * rp * rp + rm * rm + 2 * rp * rm + c) * (rp * rp + 3 * rm * rm + 2 * rp * rm + c) *
           (rp - rm) / (2.0 * l2 * l2);
}

double horizon_cofactor(const BlackHoleParams& p, const HorizonData& hz, double r) {
    double rp = hz.r_plus, rm = hz.r_minus.value_or(hz.r_plus);
    return r * r + (rp + rm) * r + rp * rp + rm * rm + rp * rm + p.a * p.a + p.l * p.l;
}

double delta_r_near(const BlackHoleParams& p, const HorizonData& hz, double dr) {
    double rm = hz.r_minus.value_or(hz.r_plus);
    double r = hz.r_plus + dr;
    return dr * ((hz.r_plus - rm) + dr) * horizon_cofactor(p, hz, r) / (p.l * p.l);
}

double surface_gravity(const BlackHoleParams& p, const HorizonData& hz) {
    if (hz.extremal) return 0.0;
    double rp = hz.r_plus, rm = hz.r_minus.value_or(rp);
    double dprime = (rp - rm) * horizon_cofactor(p, hz, rp) / (p.l * p.l);
    return dprime / (2.0 * (rp * rp + p.a * p.a));
}

double h_bound(const BlackHoleParams& p, double r) {
    return (p.a * p.a) / (p.l * p.l) * (r * r + p.l * p.l) / (r * r + p.a * p.a);
}

double sqrt_h_rplus(const BlackHoleParams& p, const HorizonData& hz) {
    return std::sqrt(h_bound(p, hz.r_plus));
}

double alpha_weight(const BlackHoleParams& p, const HorizonData& hz, double r, double theta) {
    if (r < hz.r_plus) throw Error(ErrorCode::OutsideExterior, "r below the outer horizon");
    double dr = std::max(0.0, delta_r(p, r));
    return std::sqrt(dr) / std::sqrt(delta_theta(p, theta)) * p.a * std::sin(theta) /
           (r * r + p.a * p.a);
}

}  // namespace knads
