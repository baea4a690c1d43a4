#include "knads/simd.hpp"

#include <atomic>
#include <cmath>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define KNADS_X86 1
#endif

namespace knads::simd {

namespace {
std::atomic<bool> g_force_scalar{false};
}

bool has_avx2() {
#ifdef KNADS_X86
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

void set_force_scalar(bool on) { g_force_scalar.store(on); }

static bool use_avx2() { return !g_force_scalar.load() && has_avx2(); }

// ---- Δr ---------------------------------------------------------------------

void delta_r_scalar(const BlackHoleParams& p, const double* r, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = delta_r(p, r[i]);
}

#ifdef KNADS_X86
__attribute__((target("avx2,fma"))) void delta_r_avx2(const BlackHoleParams& p, const double* r,
                                                      double* out, std::size_t n) {
    const double inv_l2 = 1.0 / (p.l * p.l);
    const __m256d va2 = _mm256_set1_pd(p.a * p.a);
    const __m256d vil2 = _mm256_set1_pd(inv_l2);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d m2 = _mm256_set1_pd(-2.0 * p.m);
    const __m256d z2 = _mm256_set1_pd(p.z2());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(r + i);
        __m256d x2 = _mm256_mul_pd(x, x);
        __m256d t1 = _mm256_add_pd(x2, va2);
        __m256d t2 = _mm256_fmadd_pd(x2, vil2, one);
        __m256d v = _mm256_fmadd_pd(m2, x, z2);
        v = _mm256_fmadd_pd(t1, t2, v);
        _mm256_storeu_pd(out + i, v);
    }
    delta_r_scalar(p, r + i, out + i, n - i);
}
#else
void delta_r_avx2(const BlackHoleParams& p, const double* r, double* out, std::size_t n) {
    delta_r_scalar(p, r, out, n);
}
#endif

void delta_r_batch(const BlackHoleParams& p, const double* r, double* out, std::size_t n) {
    if (use_avx2())
        delta_r_avx2(p, r, out, n);
    else
        delta_r_scalar(p, r, out, n);
}

// ---- tortoise integrand -----------------------------------------------------

TortoiseCoeffs tortoise_coeffs(const BlackHoleParams& p, const HorizonData& hz) {
    return {hz.r_plus, hz.r_minus.value_or(hz.r_plus), p.a * p.a, p.l * p.l};
}

void tortoise_integrand_scalar(const TortoiseCoeffs& c, const double* dr, double* out,
                               std::size_t n) {
    const double s = c.r_plus + c.r_minus;
    const double q0 = c.r_plus * c.r_plus + c.r_minus * c.r_minus + c.r_plus * c.r_minus + c.a2 +
                      c.l2;
    const double gap = c.r_plus - c.r_minus;
    for (std::size_t i = 0; i < n; ++i) {
        double r = c.r_plus + dr[i];
        double q = r * r + s * r + q0;
        out[i] = -(r * r + c.a2) * c.l2 / ((gap + dr[i]) * q);
    }
}

#ifdef KNADS_X86
__attribute__((target("avx2,fma"))) void tortoise_integrand_avx2(const TortoiseCoeffs& c,
                                                                 const double* dr, double* out,
                                                                 std::size_t n) {
    const double q0s = c.r_plus * c.r_plus + c.r_minus * c.r_minus + c.r_plus * c.r_minus +
                       c.a2 + c.l2;
    const __m256d rp = _mm256_set1_pd(c.r_plus);
    const __m256d s = _mm256_set1_pd(c.r_plus + c.r_minus);
    const __m256d q0 = _mm256_set1_pd(q0s);
    const __m256d gap = _mm256_set1_pd(c.r_plus - c.r_minus);
    const __m256d a2 = _mm256_set1_pd(c.a2);
    const __m256d nl2 = _mm256_set1_pd(-c.l2);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_loadu_pd(dr + i);
        __m256d r = _mm256_add_pd(rp, d);
        __m256d q = _mm256_fmadd_pd(_mm256_add_pd(r, s), r, q0);
        __m256d num = _mm256_mul_pd(_mm256_fmadd_pd(r, r, a2), nl2);
        __m256d den = _mm256_mul_pd(_mm256_add_pd(gap, d), q);
        _mm256_storeu_pd(out + i, _mm256_div_pd(num, den));
    }
    tortoise_integrand_scalar(c, dr + i, out + i, n - i);
}
#else
void tortoise_integrand_avx2(const TortoiseCoeffs& c, const double* dr, double* out,
                             std::size_t n) {
    tortoise_integrand_scalar(c, dr, out, n);
}
#endif

void tortoise_integrand_batch(const TortoiseCoeffs& c, const double* dr, double* out,
                              std::size_t n) {
    if (use_avx2())
        tortoise_integrand_avx2(c, dr, out, n);
    else
        tortoise_integrand_scalar(c, dr, out, n);
}

// ---- angular diagonal -------------------------------------------------------

void angular_diag_scalar(const AngularDiagCoeffs& c, const double* cs, const double* sn,
                         double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double sd = std::sqrt(1.0 - c.al2 * cs[i] * cs[i]);
        double sigma = c.d * (cs[i] - c.b) - c.k;
        out[i] = c.xi * sigma / (sd * sn[i]) + c.a_omega * sn[i] / sd;
    }
}

#ifdef KNADS_X86
__attribute__((target("avx2,fma"))) void angular_diag_avx2(const AngularDiagCoeffs& c,
                                                           const double* cs, const double* sn,
                                                           double* out, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d nal2 = _mm256_set1_pd(-c.al2);
    const __m256d vd = _mm256_set1_pd(c.d);
    const __m256d vdb = _mm256_set1_pd(-c.d * c.b - c.k);
    const __m256d vxi = _mm256_set1_pd(c.xi);
    const __m256d vaw = _mm256_set1_pd(c.a_omega);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(cs + i);
        __m256d s = _mm256_loadu_pd(sn + i);
        __m256d sd = _mm256_sqrt_pd(_mm256_fmadd_pd(_mm256_mul_pd(nal2, x), x, one));
        __m256d sigma = _mm256_fmadd_pd(vd, x, vdb);
        __m256d A = _mm256_div_pd(_mm256_mul_pd(vxi, sigma), _mm256_mul_pd(sd, s));
        __m256d B = _mm256_div_pd(_mm256_mul_pd(vaw, s), sd);
        _mm256_storeu_pd(out + i, _mm256_add_pd(A, B));
    }
    angular_diag_scalar(c, cs + i, sn + i, out + i, n - i);
}
#else
void angular_diag_avx2(const AngularDiagCoeffs& c, const double* cs, const double* sn,
                       double* out, std::size_t n) {
    angular_diag_scalar(c, cs, sn, out, n);
}
#endif

void angular_diag_batch(const AngularDiagCoeffs& c, const double* cs, const double* sn,
                        double* out, std::size_t n) {
    if (use_avx2())
        angular_diag_avx2(c, cs, sn, out, n);
    else
        angular_diag_scalar(c, cs, sn, out, n);
}

}  // namespace knads::simd
