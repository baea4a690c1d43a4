#include "knads/operators.hpp"

#include <cmath>

#include "knads/errors.hpp"

namespace knads {

void validate(const ModeContext& ctx) {
    if (!(std::isfinite(ctx.mu) && std::isfinite(ctx.e) && std::isfinite(ctx.k) &&
          std::isfinite(ctx.omega) && std::isfinite(ctx.gauge_b)))
        throw Error(ErrorCode::InvalidParams, "non-finite mode parameter");
    double twice = 2.0 * ctx.k;
    double r = std::round(twice);
    if (std::abs(twice - r) > 1e-12 || std::fmod(std::abs(r), 2.0) != 1.0)
        throw Error(ErrorCode::InvalidParams, "2k must be an odd integer");
    if (ctx.mu < 0.0) throw Error(ErrorCode::InvalidParams, "mu must be non-negative");
}

long wave_n(const ModeContext& ctx) { return std::lround(ctx.k - 0.5); }

double monopole_d(const BlackHoleParams& p, const ModeContext& ctx) {
    return p.q_m * ctx.e / p.xi();
}

double angular_sigma(const BlackHoleParams& p, const ModeContext& ctx, double theta) {
    return monopole_d(p, ctx) * (std::cos(theta) - ctx.gauge_b) - ctx.k;
}

Sym2 angular_matrix(const BlackHoleParams& p, const ModeContext& ctx, double theta) {
    if (!(theta > 0.0 && theta < M_PI))
        throw Error(ErrorCode::DomainError, "theta must lie in (0, pi)");
    double s = std::sin(theta), c = std::cos(theta);
    double sd = std::sqrt(1.0 - (p.a * p.a) / (p.l * p.l) * c * c);
    double A = p.xi() * angular_sigma(p, ctx, theta) / (sd * s);
    double B = p.a * ctx.omega * s / sd;
    return {A + B, -ctx.mu * p.a * c, -A - B};
}

double angular_weight(const BlackHoleParams& p, double theta) {
    return 1.0 / std::sqrt(delta_theta(p, theta));
}

double radial_P(const BlackHoleParams& p, const ModeContext& ctx, double r) {
    return p.a * p.xi() * ctx.k + ctx.e * (p.q_e * r + ctx.gauge_b * p.q_m * p.a);
}

double phi_plus(const BlackHoleParams& p, const HorizonData& hz, const ModeContext& ctx) {
    double rp = hz.r_plus;
    return radial_P(p, ctx, rp) / (rp * rp + p.a * p.a);
}

namespace {

Sym2 potential_from(const BlackHoleParams& p, const ModeContext& ctx, double lambda, double r,
                    double delta) {
    double sq = std::sqrt(std::max(0.0, delta));
    double den = r * r + p.a * p.a;
    double P = radial_P(p, ctx, r);
    double mass = ctx.mu * r * sq;
    return {(P + mass) / den, lambda * sq / den, (P - mass) / den};
}

}  // namespace

Sym2 radial_potential(const BlackHoleParams& p, const HorizonData& hz, const ModeContext& ctx,
                      double lambda, double r) {
    if (!(r > hz.r_plus)) throw Error(ErrorCode::OutsideExterior, "r must exceed r_plus");
    double dr = r - hz.r_plus;
    // Factored form near the horizon, plain quartic elsewhere.
    double delta = dr < hz.r_plus ? delta_r_near(p, hz, dr) : delta_r(p, r);
    return potential_from(p, ctx, lambda, r, delta);
}

Sym2 radial_potential_near(const BlackHoleParams& p, const HorizonData& hz,
                           const ModeContext& ctx, double lambda, double dr) {
    return potential_from(p, ctx, lambda, hz.r_plus + dr, delta_r_near(p, hz, dr));
}

double appendixC_Q(const BlackHoleParams& p, const HorizonData& hz, const ModeContext& ctx,
                   double r) {
    if (!(r > hz.r_plus)) throw Error(ErrorCode::OutsideExterior, "r must exceed r_plus");
    if (ctx.mu == 0.0) return 0.0;
    return ctx.mu * r / std::sqrt(delta_r(p, r));
}

}  // namespace knads
