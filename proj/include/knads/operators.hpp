#pragma once

#include "knads/geometry.hpp"

namespace knads {

// One partial wave: field mass μ, charge e, half-integer k, frequency ω, gauge parameter b.
struct ModeContext {
    double mu = 1.0;
    double e = 0.0;
    double k = 0.5;
    double omega = 0.0;
    double gauge_b = 0.0;
};

// Throws InvalidParams unless 2k is an odd integer and μ ≥ 0.
void validate(const ModeContext& ctx);

// n with k = n + 1/2.
long wave_n(const ModeContext& ctx);

// d = q_m e / Ξ; always recomputed from the background.
double monopole_d(const BlackHoleParams& p, const ModeContext& ctx);

struct Sym2 {
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;
};

// σ(θ) = d(cosθ − b) − k.
double angular_sigma(const BlackHoleParams& p, const ModeContext& ctx, double theta);

// Angular matrix in the Θ picture, including the aω sinθ/√Δθ term:
// [[A + B, −μa cosθ], [−μa cosθ, −A − B]], A = Ξσ/(√Δθ sinθ), B = aω sinθ/√Δθ.
Sym2 angular_matrix(const BlackHoleParams& p, const ModeContext& ctx, double theta);

double angular_weight(const BlackHoleParams& p, double theta);

// P(r) = aΞk + e(q_e r + b q_m a).
double radial_P(const BlackHoleParams& p, const ModeContext& ctx, double r);
double phi_plus(const BlackHoleParams& p, const HorizonData& hz, const ModeContext& ctx);

// Tortoise-form potential: diagonal (P ± μr√Δr)/(r²+a²), off-diagonal λ√Δr/(r²+a²).
Sym2 radial_potential(const BlackHoleParams& p, const HorizonData& hz, const ModeContext& ctx,
                      double lambda, double r);
// Same at r = r₊ + dr, with Δr in factored form (dr may underflow to 0).
Sym2 radial_potential_near(const BlackHoleParams& p, const HorizonData& hz,
                           const ModeContext& ctx, double lambda, double dr);

// Q(r) = μr/√Δr.
double appendixC_Q(const BlackHoleParams& p, const HorizonData& hz, const ModeContext& ctx,
                   double r);

}  // namespace knads
