#pragma once

#include <cstddef>

#include "knads/geometry.hpp"

// Batch kernels with a scalar reference and an AVX2+FMA variant picked at runtime.
namespace knads::simd {

bool has_avx2();
// Force the scalar path (used by equivalence tests and the --no-simd debug switch).
void set_force_scalar(bool on);

// out[i] = Δr(r[i]).
void delta_r_batch(const BlackHoleParams& p, const double* r, double* out, std::size_t n);
void delta_r_scalar(const BlackHoleParams& p, const double* r, double* out, std::size_t n);
void delta_r_avx2(const BlackHoleParams& p, const double* r, double* out, std::size_t n);

// Tortoise integrand in the horizon log variable: out[i] = dy/du at r = r₊ + dr[i],
// i.e. −(r²+a²) l² / ((r − r₋) q(r)).
struct TortoiseCoeffs {
    double r_plus, r_minus, a2, l2;
};
TortoiseCoeffs tortoise_coeffs(const BlackHoleParams& p, const HorizonData& hz);
void tortoise_integrand_batch(const TortoiseCoeffs& c, const double* dr, double* out,
                              std::size_t n);
void tortoise_integrand_scalar(const TortoiseCoeffs& c, const double* dr, double* out,
                               std::size_t n);
void tortoise_integrand_avx2(const TortoiseCoeffs& c, const double* dr, double* out,
                             std::size_t n);

// Angular diagonal A + B from precomputed cosθ, sinθ:
// A = Ξ(d(cosθ − b) − k)/(√Δθ sinθ), B = aω sinθ/√Δθ.
struct AngularDiagCoeffs {
    double xi, al2, d, b, k, a_omega;
};
void angular_diag_batch(const AngularDiagCoeffs& c, const double* cs, const double* sn,
                        double* out, std::size_t n);
void angular_diag_scalar(const AngularDiagCoeffs& c, const double* cs, const double* sn,
                         double* out, std::size_t n);
void angular_diag_avx2(const AngularDiagCoeffs& c, const double* cs, const double* sn,
                       double* out, std::size_t n);

}  // namespace knads::simd
