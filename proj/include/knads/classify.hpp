#pragma once

#include <string>
#include <vector>

#include "knads/geometry.hpp"
#include "knads/operators.hpp"

namespace knads {

enum class Endpoint { Theta0, ThetaPi, Horizon, Infinity };
enum class Verdict { LimitPoint, LimitCircle };

const char* to_string(Endpoint e);
const char* to_string(Verdict v);

struct EndpointClass {
    Endpoint endpoint;
    double exponent;  // signed Frobenius exponent (ν, ρ₀, μl)
    Verdict verdict;
    std::string rationale;
};

// Signed indicial exponents of the angular operator for monopole number d,
// wave number k and gauge parameter b: k − d(1−b) at θ=0, k + d(1+b) at θ=π.
double exponent_theta0(double d, double k, double gauge_b = 0.0);
double exponent_thetapi(double d, double k, double gauge_b = 0.0);

// A first-kind endpoint with exponents ±s is limit point iff |s| ≥ 1/2.
Verdict verdict_from_exponent(double s);

struct AngularClass {
    EndpointClass at0;
    EndpointClass atpi;
    bool self_adjoint;
    std::string aggregate_code;  // condmin / condmax (b = 0) or condirac (b ≠ 0)
};

AngularClass classify_angular(double d, double k, double gauge_b = 0.0);
AngularClass classify_angular(const BlackHoleParams& p, const ModeContext& ctx);

// The closed-form integer-n conditions, kept separate from the exponent route so
// the two can be cross-checked.
bool condt0_allows(long n, double d);
bool condtpi_allows(long n, double d);
bool appendix_a_allows(long n, double d);  // condmin for |d| ≤ 1/2, condmax otherwise
bool condirac_allows(long n, double d);

struct QuantizationReport {
    double d;
    bool integer;
    std::vector<long> exceptional_n;  // empty when d ∈ ℤ
};

QuantizationReport quantization_check(double d);
QuantizationReport quantization_check(const BlackHoleParams& p, double e);

EndpointClass classify_radial_infinity(double mu, double l);

struct HorizonClass {
    EndpointClass cls;
    double sup_deviation;  // sup over y ∈ [1, 10³] of |V(r(y)) − φ₊ I|_F
};

HorizonClass classify_radial_horizon(const BlackHoleParams& p, const ModeContext& ctx,
                                     double lambda = 0.0);

struct SelfAdjointnessReport {
    AngularClass angular;
    EndpointClass horizon;
    EndpointClass infinity;
    QuantizationReport quantization;
    bool essentially_self_adjoint;
    std::vector<std::string> codes;
    // n in [n_lo, n_hi] whose angular operator fails to be essentially self-adjoint.
    std::vector<long> failing_n;
};

SelfAdjointnessReport sa_report(const BlackHoleParams& p, const ModeContext& ctx,
                                long n_lo = -6, long n_hi = 6);

}  // namespace knads
