#pragma once

#include <vector>

#include "knads/geometry.hpp"
#include "knads/simd.hpp"

namespace knads {

// y(r) = ∫_r^∞ (t²+a²)/Δ_t dt and x = −y.
//
// Tabulated on a uniform grid in u = log(r − r₊) up to R_cut; the far tail is the
// exact integral y = l² ∫_0^{1/r} g(s) ds with g smooth there. Between knots the
// integral is re-evaluated with Gauss-Legendre, so lookups are exact to rounding.
class TortoiseMap {
public:
    TortoiseMap(const BlackHoleParams& p, const HorizonData& hz);

    double y_of_r(double r) const;
    double y_of_dr(double dr) const;  // r = r₊ + dr
    double y_of_u(double u) const;
    double dy_du(double u) const;
    double dy_dr(double r) const;     // −(r²+a²)/Δr
    double u_of_y(double y) const;
    double dr_of_y(double y) const;
    double r_of_y(double y) const;

    double x_of_r(double r) const { return -y_of_r(r); }
    double r_of_x(double x) const { return r_of_y(-x); }

    double r_cut() const { return r_cut_; }
    double u_lo() const { return u_lo_; }
    double u_hi() const { return u_hi_; }
    bool extremal() const { return hz_.extremal; }
    const HorizonData& horizon() const { return hz_; }

private:
    double integrand_dr(double dr) const;   // dy/du at r₊ + dr
    double panel_integral(double ua, double ub) const;
    double far_y_of_s(double s) const;      // s = 1/r
    double far_g(double s) const;
    double far_s_of_y(double y) const;

    BlackHoleParams p_;
    HorizonData hz_;
    simd::TortoiseCoeffs tc_;
    double r_cut_ = 0, s_cut_ = 0;
    double u_lo_ = 0, u_hi_ = 0, hu_ = 0;
    std::vector<double> knots_y_;  // y at u_lo + i·hu, decreasing
    // Extension below u_lo: y ≈ y_lo + c0 (e^{−u} − e^{−u_lo}) + d0 (u − u_lo).
    double ext_c0_ = 0, ext_d0_ = 0;
};

double tortoise_y(const BlackHoleParams& p, double r);
double tortoise_x(const BlackHoleParams& p, double r);

}  // namespace knads
