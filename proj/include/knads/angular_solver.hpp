#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "knads/geometry.hpp"
#include "knads/ode.hpp"
#include "knads/operators.hpp"

namespace knads {

struct AngularOptions {
    double eps = 1e-6 * M_PI;     // endpoint offset
    double c = M_PI / 2;          // matching point
    ode::Tolerance tol{1e-12, 1e-12};
    bool record = false;          // keep the sampled traces
    bool frobenius_correction = true;
    // Boundary parameter at a limit-circle endpoint; required there, ignored at limit point.
    std::optional<double> beta0, betapi;
};

struct PruferTrace {
    std::vector<double> theta;
    std::vector<double> eta;
    std::vector<double> log_rho;
    double eta_start = 0.0;
    double eps = 0.0;
    double exponent = 0.0;      // |s| of the recessive branch
    std::string direction;      // "pi/4" or "3pi/4" (plus correction)
    long winding = 0;           // floor(η_end / π)
    double tol = 0.0;
    ode::Stats stats;
};

struct ShootResult {
    double eta_left = 0.0;
    double eta_right = 0.0;
    PruferTrace left, right;
};

// η' = [λ − (M e|e)] / √Δθ, e = (cos η, sin η).
double prufer_rhs(const BlackHoleParams& p, const ModeContext& ctx, double theta, double eta,
                  double lambda);

ShootResult shoot_angular(const BlackHoleParams& p, const ModeContext& ctx, double lambda,
                          const AngularOptions& opt = {});

// η_L(c) − η_R(c); strictly increasing in λ, eigenvalues where it hits mπ.
double matching_defect(const BlackHoleParams& p, const ModeContext& ctx, double lambda,
                       const AngularOptions& opt = {});

struct SpectrumWindow {
    double lo = 0.0, hi = 0.0;
    std::vector<double> eigenvalues;
    std::vector<double> residuals;     // |D(λ) − mπ| at the returned root
    std::vector<long> winding;         // m with D(λ) = mπ
    std::vector<long> labels;          // signed j
    std::vector<double> oracle_delta;  // filled by callers that run the oracle
    long winding_count = 0;            // #{m : D(lo) < mπ ≤ D(hi)}
    double min_gap = 0.0;
};

SpectrumWindow angular_eigenvalues(const BlackHoleParams& p, const ModeContext& ctx, double lo,
                                   double hi, const AngularOptions& opt = {});

// Eigenvalue on the branch D(λ) = mπ, searched outward from [lo, hi].
double angular_eigenvalue_for_winding(const BlackHoleParams& p, const ModeContext& ctx, long m,
                                      double lo, double hi, const AngularOptions& opt = {},
                                      double* residual = nullptr);

// m₀ = floor(D(0)/π) evaluated at ω = 0: branches m > m₀ get j = m − m₀, the others
// j = m − m₀ − 1.
long winding_reference(const BlackHoleParams& p, const ModeContext& ctx,
                       const AngularOptions& opt = {});
long label_from_winding(long m, long m0);
long winding_from_label(long j, long m0);

// Closed-form weight E(θ) = exp ∫_c^θ p(t) dt with p = −kΞ/(Δθ sin t).
double appendixB_E(const BlackHoleParams& p, const ModeContext& ctx, double theta,
                   double c = M_PI / 2);
double appendixB_p(const BlackHoleParams& p, const ModeContext& ctx, double theta);

}  // namespace knads
