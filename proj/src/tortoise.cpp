#include "knads/tortoise.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "knads/errors.hpp"
#include "knads/quadrature.hpp"

namespace knads {

namespace {
constexpr double kPanelWidth = 0.125;
}

TortoiseMap::TortoiseMap(const BlackHoleParams& p, const HorizonData& hz)
    : p_(p), hz_(hz), tc_(simd::tortoise_coeffs(p, hz)) {
    const double l2 = p.l * p.l;
    // Fujiwara bound on the complex roots of l²Δr keeps the far-tail rule well inside
    // its disc of analyticity.
    double fuj = 2.0 * std::max({std::sqrt(l2 + p.a * p.a), std::cbrt(2.0 * p.m * l2),
                                 std::pow(0.5 * l2 * (p.a * p.a + p.z2()), 0.25)});
    r_cut_ = std::max(50.0 * std::max(hz.r_plus, p.l), 10.0 * fuj);
    s_cut_ = 1.0 / r_cut_;

    const double rp = hz.r_plus;
    const double gap = rp - hz.r_minus.value_or(rp);
    double dr_lo = hz.extremal ? 1e-10 * std::max(rp, p.l) : 1e-20 * gap;
    u_lo_ = std::log(dr_lo);
    double u_top = std::log(r_cut_ - rp);
    int panels = std::max(1, static_cast<int>(std::ceil((u_top - u_lo_) / kPanelWidth)));
    hu_ = (u_top - u_lo_) / panels;
    u_hi_ = u_top;

    knots_y_.assign(panels + 1, 0.0);
    knots_y_[panels] = far_y_of_s(s_cut_);
    for (int i = panels - 1; i >= 0; --i) {
        double ua = u_lo_ + i * hu_, ub = ua + hu_;
        double val = panel_integral(ua, ub);
        auto f = [&](double u) { return -integrand_dr(std::exp(u)); };
        double check = quad::gl10_integrate(f, ua, ub);
        if (std::abs(val - check) > 1e-13 * std::abs(val) &&
            !quad::adaptive_integrate(f, ua, ub, 1e-14, 0.0, val))
            throw Error(ErrorCode::QuadratureFailure, "tortoise panel did not converge");
        knots_y_[i] = knots_y_[i + 1] + val;
    }

    if (hz.extremal) {
        // dy/du = −F(r)/dr with F = (r²+a²) l² / q(r); expand F about r₊.
        double q = horizon_cofactor(p, hz, rp);
        double F = (rp * rp + p.a * p.a) * l2 / q;
        double qp = 2.0 * rp + (rp + hz.r_minus.value_or(rp));
        double Fp = l2 * (2.0 * rp * q - (rp * rp + p.a * p.a) * qp) / (q * q);
        ext_c0_ = F;
        ext_d0_ = -Fp;
    } else {
        ext_c0_ = 0.0;
        ext_d0_ = integrand_dr(0.0);
    }
}

double TortoiseMap::integrand_dr(double dr) const {
    double out;
    simd::tortoise_integrand_scalar(tc_, &dr, &out, 1);
    return out;
}

double TortoiseMap::panel_integral(double ua, double ub) const {
    // ∫_{ua}^{ub} (−dy/du) du with one batched 20-point rule.
    const auto& R = quad::gl20();
    std::array<double, 20> dr{}, f{};
    double c = 0.5 * (ua + ub), h = 0.5 * (ub - ua);
    for (int i = 0; i < 20; ++i) dr[i] = std::exp(c + h * R.x[i]);
    simd::tortoise_integrand_batch(tc_, dr.data(), f.data(), 20);
    double s = 0.0;
    for (int i = 0; i < 20; ++i) s -= R.w[i] * f[i];
    return s * h;
}

double TortoiseMap::far_g(double s) const {
    double l2 = p_.l * p_.l, a2 = p_.a * p_.a;
    double num = 1.0 + a2 * s * s;
    double den = 1.0 + (l2 + a2) * s * s - 2.0 * p_.m * l2 * s * s * s +
                 l2 * (a2 + p_.z2()) * s * s * s * s;
    return num / den;
}

double TortoiseMap::far_y_of_s(double s) const {
    return p_.l * p_.l * quad::gl20_integrate([&](double t) { return far_g(t); }, 0.0, s);
}

double TortoiseMap::far_s_of_y(double y) const {
    double l2 = p_.l * p_.l;
    double s = std::min(y / l2, s_cut_);
    for (int it = 0; it < 60; ++it) {
        double f = far_y_of_s(s) - y;
        double ds = f / (l2 * far_g(s));
        s -= ds;
        if (std::abs(ds) <= 1e-16 * s) break;
    }
    return s;
}

double TortoiseMap::y_of_u(double u) const {
    if (u >= u_hi_) {
        double r = hz_.r_plus + std::exp(u);
        return far_y_of_s(1.0 / r);
    }
    if (u <= u_lo_) {
        double y = knots_y_[0] + ext_d0_ * (u - u_lo_);
        if (ext_c0_ != 0.0) y += ext_c0_ * (std::exp(-u) - std::exp(-u_lo_));
        return y;
    }
    auto i = static_cast<std::size_t>((u - u_lo_) / hu_);
    i = std::min(i, knots_y_.size() - 2);
    double ub = u_lo_ + (i + 1) * hu_;
    if (u >= ub) return knots_y_[i + 1];
    return knots_y_[i + 1] + panel_integral(u, ub);
}

double TortoiseMap::dy_du(double u) const {
    if (u <= u_lo_ && hz_.extremal) return -ext_c0_ * std::exp(-u) + ext_d0_;
    return integrand_dr(std::exp(u));
}

double TortoiseMap::y_of_dr(double dr) const {
    if (!(dr > 0.0)) throw Error(ErrorCode::OutsideExterior, "r must exceed r_plus");
    double r = hz_.r_plus + dr;
    if (r >= r_cut_) return far_y_of_s(1.0 / r);
    return y_of_u(std::log(dr));
}

double TortoiseMap::y_of_r(double r) const {
    if (!(r > hz_.r_plus)) throw Error(ErrorCode::OutsideExterior, "r must exceed r_plus");
    if (r >= r_cut_) return far_y_of_s(1.0 / r);
    return y_of_u(std::log(r - hz_.r_plus));
}

double TortoiseMap::dy_dr(double r) const {
    if (!(r > hz_.r_plus)) throw Error(ErrorCode::OutsideExterior, "r must exceed r_plus");
    double dr = r - hz_.r_plus;
    return integrand_dr(dr) / dr;
}

double TortoiseMap::u_of_y(double y) const {
    if (!(y > 0.0)) throw Error(ErrorCode::DomainError, "y must be positive");
    const double y_top = knots_y_.back();
    if (y <= y_top) {
        double s = far_s_of_y(y);
        return std::log(1.0 / s - hz_.r_plus);
    }
    if (y >= knots_y_[0]) {
        if (!hz_.extremal) return u_lo_ + (y - knots_y_[0]) / ext_d0_;
        // Newton in u on the extremal extension.
        double u = -std::log((y - knots_y_[0]) / ext_c0_ + std::exp(-u_lo_));
        for (int it = 0; it < 50; ++it) {
            double f = y_of_u(u) - y;
            double du = f / dy_du(u);
            u -= du;
            if (std::abs(du) < 1e-15 * std::max(1.0, std::abs(u))) break;
        }
        return std::min(u, u_lo_);
    }
    // knots_y_ decreases with index.
    auto it = std::upper_bound(knots_y_.begin(), knots_y_.end(), y, std::greater<double>());
    std::size_t i = static_cast<std::size_t>(it - knots_y_.begin());
    i = std::clamp<std::size_t>(i, 1, knots_y_.size() - 1) - 1;
    double ua = u_lo_ + i * hu_, ub = ua + hu_;
    double ya = knots_y_[i], yb = knots_y_[i + 1];
    double u = ua + (ya - y) / (ya - yb) * hu_;
    double lo = ua, hi = ub;
    for (int k = 0; k < 60; ++k) {
        double f = y_of_u(u) - y;  // decreasing in u
        if (f > 0) lo = u; else hi = u;
        double un = u - f / dy_du(u);
        if (!(un > lo && un < hi)) un = 0.5 * (lo + hi);
        if (std::abs(un - u) <= 4e-16 * std::max(1.0, std::abs(u))) {
            u = un;
            break;
        }
        u = un;
    }
    return u;
}

double TortoiseMap::dr_of_y(double y) const { return std::exp(u_of_y(y)); }

double TortoiseMap::r_of_y(double y) const {
    if (!(y > 0.0)) throw Error(ErrorCode::DomainError, "y must be positive");
    if (y <= knots_y_.back()) return 1.0 / far_s_of_y(y);
    return hz_.r_plus + dr_of_y(y);
}

double tortoise_y(const BlackHoleParams& p, double r) {
    return TortoiseMap(p, find_horizons(p)).y_of_r(r);
}

double tortoise_x(const BlackHoleParams& p, double r) { return -tortoise_y(p, r); }

}  // namespace knads
