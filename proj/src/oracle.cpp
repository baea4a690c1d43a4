#include "knads/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <lapacke.h>

#include "knads/classify.hpp"
#include "knads/errors.hpp"
#include "knads/simd.hpp"
#include "knads/tortoise.hpp"

namespace knads {

namespace {

// Boundary-layer map with G'(0) = G'(1) = 0: G'(s) ∝ 1 − (1 − 2s)^8.
constexpr int kLayerPow = 4;

double layer_map(double s) {
    const int q = 2 * kLayerPow + 1;
    const double C = 1.0 / (1.0 - 1.0 / q);
    return C * (s + std::pow(1.0 - 2.0 * s, q) / (2.0 * q) - 1.0 / (2.0 * q));
}

double layer_map_d(double s) {
    const double C = 1.0 / (1.0 - 1.0 / (2 * kLayerPow + 1));
    return C * (1.0 - std::pow(1.0 - 2.0 * s, 2 * kLayerPow));
}

void assemble(DiscretizedOperator& op, const std::vector<double>& pcoef,
              const std::vector<double>& m11, const std::vector<double>& m12_mid, double hh) {
    const std::size_t n = pcoef.size();
    op.diag.resize(n);
    op.offdiag.resize(n - 1);
    op.weight.resize(n);
    const double h = 2.0 * hh;
    for (std::size_t j = 0; j < n; ++j) {
        op.diag[j] = op.component[j] == 0 ? m11[j] : -m11[j];
        op.weight[j] = 1.0 / pcoef[j];
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
        double sgn = op.component[j] == 0 ? 1.0 : -1.0;
        op.offdiag[j] = sgn * std::sqrt(pcoef[j] * pcoef[j + 1]) / h + 0.5 * m12_mid[j];
    }
}

}  // namespace

DiscretizedOperator discretize_angular(const BlackHoleParams& p, const ModeContext& ctx, int N,
                                       double epsilon) {
    validate(p);
    validate(ctx);
    if (N < 200) throw Error(ErrorCode::GridTooCoarse, "need N >= 200");
    auto cls = classify_angular(p, ctx);
    if (!cls.self_adjoint)
        throw Error(ErrorCode::NotLimitPoint, "angular oracle needs limit point at both ends");

    const int n = 2 * N;
    const double hh = 1.0 / (n + 1);
    const double span = M_PI - 2.0 * epsilon;
    DiscretizedOperator op;
    op.lo = epsilon;
    op.hi = M_PI - epsilon;
    op.cells = N;
    op.scheme = "staggered-layer-map";
    op.coord.resize(n);
    op.component.resize(n);

    std::vector<double> cs(n), sn(n), pc(n), diag(n), m12(n - 1);
    for (int j = 0; j < n; ++j) {
        double s = (j + 1) * hh;
        double th = epsilon + span * layer_map(s);
        op.coord[j] = th;
        op.component[j] = j % 2;
        cs[j] = std::cos(th);
        sn[j] = std::sin(th);
        double sd = std::sqrt(1.0 - (p.a * p.a) / (p.l * p.l) * cs[j] * cs[j]);
        pc[j] = sd / (span * layer_map_d(s));
    }
    simd::AngularDiagCoeffs dc{p.xi(), (p.a * p.a) / (p.l * p.l), monopole_d(p, ctx),
                               ctx.gauge_b, ctx.k, p.a * ctx.omega};
    simd::angular_diag_batch(dc, cs.data(), sn.data(), diag.data(), n);
    for (int j = 0; j + 1 < n; ++j) {
        double th = epsilon + span * layer_map((j + 1.5) * hh);
        m12[j] = -ctx.mu * p.a * std::cos(th);
    }
    assemble(op, pc, diag, m12, hh);
    return op;
}

DiscretizedOperator discretize_radial_confined(const BlackHoleParams& p, const ModeContext& ctx,
                                               double lambda, double r0, int N, double delta) {
    validate(p);
    validate(ctx);
    if (N < 200) throw Error(ErrorCode::GridTooCoarse, "need N >= 200");
    if (!(ctx.mu > 0.0)) throw Error(ErrorCode::NotConfining, "mu = 0 gives no confinement");
    if (classify_radial_infinity(ctx.mu, p.l).verdict != Verdict::LimitPoint)
        throw Error(ErrorCode::NotLimitPoint, "need mu*l >= 1/2");
    HorizonData hz = find_horizons(p);
    if (!(r0 > hz.r_plus)) throw Error(ErrorCode::OutsideExterior, "r0 must exceed r_plus");
    TortoiseMap T(p, hz);

    const int n = 2 * N;
    const double hh = 1.0 / (n + 1);
    const double x0 = T.x_of_r(r0);
    const double span = -delta - x0;
    auto xmap = [&](double s) { return x0 + span * std::sin(0.5 * M_PI * s); };
    auto xmap_d = [&](double s) { return span * 0.5 * M_PI * std::cos(0.5 * M_PI * s); };

    DiscretizedOperator op;
    op.lo = x0;
    op.hi = -delta;
    op.cells = N;
    op.scheme = "staggered-sine-map";
    op.coord.resize(n);
    op.component.resize(n);
    std::vector<double> pc(n), m11(n), m12(n - 1);
    for (int j = 0; j < n; ++j) {
        double s = (j + 1) * hh;
        double x = xmap(s);
        op.coord[j] = x;
        op.component[j] = j % 2;
        double r = T.r_of_x(x);
        Sym2 V = radial_potential(p, hz, ctx, lambda, r);
        // Component 1 carries V22 = P − mass, so store the diagonal as it is assembled.
        m11[j] = op.component[j] == 0 ? V.a11 : -V.a22;
        pc[j] = 1.0 / xmap_d(s);
    }
    for (int j = 0; j + 1 < n; ++j) {
        double r = T.r_of_x(xmap((j + 1.5) * hh));
        m12[j] = radial_potential(p, hz, ctx, lambda, r).a12;
    }
    assemble(op, pc, m11, m12, hh);
    return op;
}

OracleSpectrum oracle_eigenvalues(const DiscretizedOperator& op, double lo, double hi,
                                  bool with_vectors) {
    const lapack_int n = static_cast<lapack_int>(op.diag.size());
    std::vector<double> d = op.diag, e = op.offdiag;
    e.push_back(0.0);
    std::vector<double> w(n);
    std::vector<double> z;
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
    lapack_int m = 0;
    // Upper bound on the number of eigenvalues in the window, via a Sturm count.
    lapack_int ldz = with_vectors ? n : 1;
    if (with_vectors) {
        lapack_int cap = 0;
        {
            auto count_below = [&](double x) {
                lapack_int c = 0;
                double q = d[0] - x;
                if (q < 0) ++c;
                for (lapack_int i = 1; i < n; ++i) {
                    double denom = q == 0.0 ? 1e-300 : q;
                    q = d[i] - x - e[i - 1] * e[i - 1] / denom;
                    if (q < 0) ++c;
                }
                return c;
            };
            cap = count_below(hi) - count_below(lo) + 4;
        }
        z.assign(static_cast<std::size_t>(n) * std::max<lapack_int>(cap, 1), 0.0);
    }
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'V', n,
                                     d.data(), e.data(), lo, hi, 0, 0, 0.0, &m, w.data(),
                                     with_vectors ? z.data() : nullptr, ldz, isuppz.data());
    if (info != 0) throw Error(ErrorCode::IntegratorStall, "tridiagonal eigensolve failed");

    OracleSpectrum out;
    for (lapack_int k = 0; k < m; ++k) {
        out.eigenvalues.push_back(w[k]);
        double ratio = 1.0;
        if (with_vectors) {
            double s0 = 0.0, s1 = 0.0;
            for (lapack_int i = 0; i < n; ++i) {
                double v = z[static_cast<std::size_t>(k) * n + i];
                (op.component[i] == 0 ? s0 : s1) += v * v;
            }
            ratio = s1 > 0.0 ? std::sqrt(s0 / s1) : std::numeric_limits<double>::infinity();
        }
        out.component_ratio.push_back(ratio);
        out.spurious.push_back(!(ratio >= 0.1 && ratio <= 10.0));
    }
    return out;
}

std::vector<double> oracle_clean(const OracleSpectrum& s) {
    std::vector<double> out;
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        if (!s.spurious[i]) out.push_back(s.eigenvalues[i]);
    return out;
}

double richardson2(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

double observed_order(double f_h, double f_h2, double f_h4) {
    return std::log2(std::abs(f_h - f_h2) / std::abs(f_h2 - f_h4));
}

}  // namespace knads
