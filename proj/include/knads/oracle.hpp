#pragma once

#include <string>
#include <vector>

#include "knads/geometry.hpp"
#include "knads/operators.hpp"

namespace knads {

// Symmetric tridiagonal staggered discretisation of a 2×2 first-order system
// p(s) J ∂_s + M on a mapped grid. Components alternate node by node.
struct DiscretizedOperator {
    std::vector<double> coord;      // physical coordinate of each node
    std::vector<int> component;     // 0 or 1
    std::vector<double> diag;
    std::vector<double> offdiag;    // size n − 1
    std::vector<double> weight;     // measure weight per node
    double lo = 0.0, hi = 0.0;      // virtual zero nodes sit here
    int cells = 0;                  // N, cells per component; matrix size 2N
    std::string scheme;
    int order = 2;
};

// Θ-picture angular operator on [ε, π−ε] with both ends clustered (g'(0) = g'(1) = 0).
DiscretizedOperator discretize_angular(const BlackHoleParams& p, const ModeContext& ctx, int N,
                                       double epsilon = 0.0);

// h_∞ = J∂_x + V on [x(r₀), −δ] with X₂(r₀) = 0 and the infinity end clustered.
DiscretizedOperator discretize_radial_confined(const BlackHoleParams& p, const ModeContext& ctx,
                                               double lambda, double r0, int N,
                                               double delta = 1e-12);

struct OracleSpectrum {
    std::vector<double> eigenvalues;
    std::vector<double> component_ratio;  // ‖even-node part‖ / ‖odd-node part‖
    std::vector<bool> spurious;           // ratio outside [0.1, 10]
};

// Eigenvalues in (lo, hi]; spurious modes are reported but kept in the list.
OracleSpectrum oracle_eigenvalues(const DiscretizedOperator& op, double lo, double hi,
                                  bool with_vectors = true);

// Non-spurious eigenvalues only.
std::vector<double> oracle_clean(const OracleSpectrum& s);

// Richardson extrapolation of a second-order sequence: (4 f(h/2) − f(h)) / 3.
double richardson2(double coarse, double fine);
// Observed order from three step-halved values.
double observed_order(double f_h, double f_h2, double f_h4);

}  // namespace knads
