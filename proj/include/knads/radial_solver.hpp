#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "knads/angular_solver.hpp"
#include "knads/classify.hpp"
#include "knads/geometry.hpp"
#include "knads/ode.hpp"
#include "knads/operators.hpp"
#include "knads/tortoise.hpp"

namespace knads {

struct RadialOptions {
    double r0 = 0.0;       // switchover radius; 0 means r₊ + l
    double x_cut = -1e-4;  // infinity-side cutoff in x
    double beta = 0.0;     // boundary condition X₁ sinβ + X₂ cosβ = 0 at r₀
    double shift = 0.0;    // constant added to the diagonal of V
    ode::Tolerance tol{1e-11, 1e-11};
};

// Background data shared by the radial routines.
struct RadialBackground {
    BlackHoleParams p;
    HorizonData hz;
    TortoiseMap tortoise;
    double r0;

    RadialBackground(const BlackHoleParams& params, double r0_request = 0.0);
};

// −(η(r₀) + β), increasing in ω; h_∞ eigenvalues sit where it equals mπ.
double hinf_phase(const RadialBackground& bg, const ModeContext& ctx, double lambda,
                  double omega, const RadialOptions& opt = {});

SpectrumWindow hinf_eigenvalues(const BlackHoleParams& p, const ModeContext& ctx, double lambda,
                                double lo, double hi, const RadialOptions& opt = {});

struct RadialCertificate {
    std::string kind;  // Hinf_discrete, Hor_AC_L1, Extremal_Cesaro, Levinson_phi_plus
    bool pass = false;
    std::string norm = "frobenius";
    std::map<std::string, double> evidence;
    std::vector<std::pair<double, double>> series;  // (Y, value) ladders for audit
};

// ∫_c^Y |V(r(y)) − φ₊ I| dy with c = y(r₀), for each Y in ys.
std::vector<double> horizon_deviation_integrals(const RadialBackground& bg, const ModeContext& ctx,
                                                double lambda, const std::vector<double>& ys);

RadialCertificate l1_certificate(const BlackHoleParams& p, const ModeContext& ctx, double lambda);
RadialCertificate cesaro_certificate(const BlackHoleParams& p, const ModeContext& ctx,
                                     double lambda);
// L¹ for non-extremal holes, Cesàro for extremal ones.
RadialCertificate horizon_ac_certificate(const BlackHoleParams& p, const ModeContext& ctx,
                                         double lambda);

RadialCertificate levinson_phi_plus(const BlackHoleParams& p, const ModeContext& ctx,
                                    double lambda);

struct OscillationReport {
    double slope = 0.0;         // fitted −dη/dy over the last decade
    double expected = 0.0;      // ω − φ₊
    double rel_error = 0.0;
    double radius_ratio = 0.0;  // max/min Prüfer radius over the last decade
    bool pass = false;
    std::vector<std::pair<double, double>> trace;  // (y, η)
};

OscillationReport horizon_oscillation(const BlackHoleParams& p, const ModeContext& ctx,
                                      double lambda, double omega, double Y = 1e4);

// Recessive solution from infinity carried to r₀ and on towards the horizon.
struct TransportReport {
    double amplitude_ratio = 0.0;  // min |X| over y ∈ [Y/10, Y] divided by |X(r₀)|
    double decay_exponent = 0.0;   // fitted d log|X| / d log r near the cutoff
    double slope = 0.0;            // −dη/dy over the last decade
    bool used_levinson = false;
};

TransportReport radial_transport(const RadialBackground& bg, const ModeContext& ctx,
                                 double lambda, double omega, double Y = 1e3,
                                 const RadialOptions& opt = {});

// Limit-point test at infinity: decade increments of ∫ r^{2μl}(r²+a²)/Δr dr.
struct L2TailReport {
    double mu_l = 0.0;
    std::vector<double> decade_increments;
    double ratio_exponent = 0.0;  // log10 of the last increment ratio, → 2μl − 1
    bool converges = false;
    Verdict verdict = Verdict::LimitPoint;
};

L2TailReport infinity_l2_tail(const BlackHoleParams& p, const ModeContext& ctx);

struct GrowthReport {
    double outward = 0.0;  // generic data, → +μl
    double inward = 0.0;   // Frobenius-recessive data, → −μl
};

GrowthReport infinity_growth_exponents(const BlackHoleParams& p, const ModeContext& ctx,
                                       double lambda, double omega);

// ∫_{r₀}^{R} Q dr and its growth rate d/d(log R) at R.
std::pair<double, double> appendixC_integral(const BlackHoleParams& p, const ModeContext& ctx,
                                             double r0, double R);

}  // namespace knads
