#pragma once

#include <optional>
#include <vector>

namespace knads {

// Background parameters in geometric units. All lengths are in the caller's units;
// nothing is normalised by l internally.
struct BlackHoleParams {
    double m = 1.0;
    double a = 0.0;
    double q_e = 0.0;
    double q_m = 0.0;
    double l = 1.0;

    double xi() const { return 1.0 - a * a / (l * l); }
    double z2() const { return q_e * q_e + q_m * q_m; }
    double cosmological_constant() const { return -3.0 / (l * l); }
};

// Throws InvalidParams unless l > 0, a² < l², m ≥ 0 and all fields are finite.
void validate(const BlackHoleParams& p);

double delta_r(const BlackHoleParams& p, double r);
double delta_r_d1(const BlackHoleParams& p, double r);
double delta_r_d2(const BlackHoleParams& p, double r);
double delta_theta(const BlackHoleParams& p, double theta);

struct HorizonData {
    double r_plus = 0.0;
    std::optional<double> r_minus;
    std::vector<double> all_real_roots;  // ascending
    bool extremal = false;
    double residual = 0.0;               // |Δr(r_plus)|
};

HorizonData find_horizons(const BlackHoleParams& p);

// True when m lies strictly above the extremal mass (two distinct horizons).
bool is_nonextremal(const BlackHoleParams& p);

double extremal_mass(double a, double z2, double l);

struct Komar {
    double M, J, Q_e, Q_m;
};
Komar komar(const BlackHoleParams& p);

struct Reparam {
    double m, z2;
};
Reparam reparameterize(double r_plus, double r_minus, double a, double l);
double reparam_jacobian(double r_plus, double r_minus, double a, double l);

// q(r) with l²Δr = (r − r₊)(r − r₋) q(r).
double horizon_cofactor(const BlackHoleParams& p, const HorizonData& hz, double r);
// Δr at r = r₊ + dr, evaluated in factored form so that tiny dr keeps full relative precision.
double delta_r_near(const BlackHoleParams& p, const HorizonData& hz, double dr);
// κ = Δr'(r₊) / (2(r₊² + a²)); zero for an extremal hole.
double surface_gravity(const BlackHoleParams& p, const HorizonData& hz);

double h_bound(const BlackHoleParams& p, double r);
double sqrt_h_rplus(const BlackHoleParams& p, const HorizonData& hz);
double alpha_weight(const BlackHoleParams& p, const HorizonData& hz, double r, double theta);

}  // namespace knads
