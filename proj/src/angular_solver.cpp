#include "knads/angular_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "knads/classify.hpp"
#include "knads/errors.hpp"

namespace knads {

namespace {

struct AngularSystem {
    double xi, al2, a, mu, omega, d, b, k;

    AngularSystem(const BlackHoleParams& p, const ModeContext& ctx)
        : xi(p.xi()),
          al2(p.a * p.a / (p.l * p.l)),
          a(p.a),
          mu(ctx.mu),
          omega(ctx.omega),
          d(monopole_d(p, ctx)),
          b(ctx.gauge_b),
          k(ctx.k) {}

    // Returns η' and (log ρ)'.
    void rhs(double th, double eta, double lambda, double& deta, double& dlr) const {
        double s = std::sin(th), c = std::cos(th);
        double sd = std::sqrt(1.0 - al2 * c * c);
        double A = xi * (d * (c - b) - k) / (sd * s);
        double B = a * omega * s / sd;
        double m11 = A + B, m12 = -mu * a * c;
        double ce = std::cos(eta), se = std::sin(eta);
        double c2 = ce * ce - se * se, sc = se * ce;
        double mee = m11 * c2 + 2.0 * m12 * sc;
        deta = (lambda - mee) / sd;
        dlr = (m12 * c2 - 2.0 * m11 * sc) / sd;
    }
};

// Initial phase at an endpoint from the Frobenius data. sign_n = +1 at θ=0 (θΘ' = (sσ_x + θC)Θ),
// at θ=π the exponent enters as −s. C is the constant matrix of the first-order term.
struct StartData {
    double eta;
    double exponent;
    std::string dir;
};

StartData frobenius_start(double s_eff, const std::array<double, 4>& C, double eps,
                          bool correct, std::optional<double> beta) {
    // N = s_eff σ_x. Recessive eigenvector has eigenvalue |s_eff|.
    const double r2 = 1.0 / std::sqrt(2.0);
    const bool plus = s_eff >= 0.0;
    std::array<double, 2> vrec = plus ? std::array<double, 2>{r2, r2}
                                      : std::array<double, 2>{r2, -r2};
    std::array<double, 2> vdom = plus ? std::array<double, 2>{r2, -r2}
                                      : std::array<double, 2>{r2, r2};
    const double as = std::abs(s_eff);
    auto corrected = [&](const std::array<double, 2>& v0, double expo) {
        // v1 = ((expo+1)I − N)^{-1} C v0, X ≈ v0 + ε v1.
        double cv0 = C[0] * v0[0] + C[1] * v0[1];
        double cv1 = C[2] * v0[0] + C[3] * v0[1];
        double m00 = expo + 1.0, m01 = -s_eff;
        double det = m00 * m00 - m01 * m01;
        std::array<double, 2> v1{(m00 * cv0 - m01 * cv1) / det, (m00 * cv1 - m01 * cv0) / det};
        if (!correct || std::abs(det) < 1e-14) v1 = {0.0, 0.0};
        return std::array<double, 2>{v0[0] + eps * v1[0], v0[1] + eps * v1[1]};
    };
    std::array<double, 2> X;
    if (!beta) {
        X = corrected(vrec, as);
    } else {
        auto xr = corrected(vrec, as);
        auto xd = corrected(vdom, -as);
        double wr = std::cos(*beta), wd = std::sin(*beta) * std::pow(eps, -2.0 * as);
        X = {wr * xr[0] + wd * xd[0], wr * xr[1] + wd * xd[1]};
    }
    double base = plus ? M_PI / 4 : 3 * M_PI / 4;
    // Keep η continuous with the leading direction.
    double raw = std::atan2(X[1], X[0]);
    double eta = raw + std::round((base - raw) / M_PI) * M_PI;
    return {eta, as, plus ? "pi/4" : "3pi/4"};
}

PruferTrace integrate_side(const AngularSystem& sys, double lambda, double t0, double t1,
                           const StartData& st, const AngularOptions& opt, double& eta_end) {
    PruferTrace tr;
    tr.eta_start = st.eta;
    tr.eps = opt.eps;
    tr.exponent = st.exponent;
    tr.direction = st.dir;
    tr.tol = opt.tol.rel;
    std::array<double, 2> x{st.eta, 0.0};
    if (opt.record) {
        tr.theta.push_back(t0);
        tr.eta.push_back(x[0]);
        tr.log_rho.push_back(x[1]);
    }
    auto rhs = [&](double t, const std::array<double, 2>& s, std::array<double, 2>& ds) {
        sys.rhs(t, s[0], lambda, ds[0], ds[1]);
    };
    auto cap = [](double t) { return 0.25 * std::min(t, M_PI - t); };
    auto obs = [&](double t, const std::array<double, 2>& s) {
        if (opt.record) {
            tr.theta.push_back(t);
            tr.eta.push_back(s[0]);
            tr.log_rho.push_back(s[1]);
        }
        return true;
    };
    tr.stats = ode::integrate<2>(rhs, x, t0, t1, 0.25 * opt.eps, opt.tol, cap, obs);
    eta_end = x[0];
    tr.winding = static_cast<long>(std::floor(x[0] / M_PI));
    return tr;
}

void check_endpoints(double s0, double sp, const AngularOptions& opt) {
    if (verdict_from_exponent(s0) == Verdict::LimitCircle && !opt.beta0)
        throw Error(ErrorCode::NotLimitPoint, "limit circle at theta=0 and no beta given");
    if (verdict_from_exponent(sp) == Verdict::LimitCircle && !opt.betapi)
        throw Error(ErrorCode::NotLimitPoint, "limit circle at theta=pi and no beta given");
}

}  // namespace

double prufer_rhs(const BlackHoleParams& p, const ModeContext& ctx, double theta, double eta,
                  double lambda) {
    if (!(theta > 0.0 && theta < M_PI))
        throw Error(ErrorCode::DomainError, "theta must lie in (0, pi)");
    AngularSystem sys(p, ctx);
    double de, dl;
    sys.rhs(theta, eta, lambda, de, dl);
    return de;
}

ShootResult shoot_angular(const BlackHoleParams& p, const ModeContext& ctx, double lambda,
                          const AngularOptions& opt) {
    validate(p);
    validate(ctx);
    AngularSystem sys(p, ctx);
    const double s0 = exponent_theta0(sys.d, sys.k, sys.b);
    const double sp = exponent_thetapi(sys.d, sys.k, sys.b);
    check_endpoints(s0, sp, opt);
    if (!(opt.c > opt.eps && opt.c < M_PI - opt.eps))
        throw Error(ErrorCode::DomainError, "matching point outside (eps, pi-eps)");

    const double rx = std::sqrt(sys.xi);
    const double ma = sys.mu * sys.a;
    // J = [[0,1],[-1,0]]. Left: C0 = −J(λ + μa σ_x)/√Ξ. Right (in α = π−θ): Cπ = J(λ − μa σ_x)/√Ξ.
    std::array<double, 4> C0{ma / rx * -1.0, -lambda / rx, lambda / rx, ma / rx};
    std::array<double, 4> Cp{-ma / rx, lambda / rx, -lambda / rx, ma / rx};
    // At θ=π the indicial matrix is −sπ σ_x.
    StartData left = frobenius_start(s0, C0, opt.eps, opt.frobenius_correction, opt.beta0);
    StartData right = frobenius_start(-sp, Cp, opt.eps, opt.frobenius_correction, opt.betapi);

    ShootResult res;
    res.left = integrate_side(sys, lambda, opt.eps, opt.c, left, opt, res.eta_left);
    res.right = integrate_side(sys, lambda, M_PI - opt.eps, opt.c, right, opt, res.eta_right);
    return res;
}

double matching_defect(const BlackHoleParams& p, const ModeContext& ctx, double lambda,
                       const AngularOptions& opt) {
    AngularOptions o = opt;
    o.record = false;
    auto r = shoot_angular(p, ctx, lambda, o);
    return r.eta_left - r.eta_right;
}

namespace {

double solve_branch(const std::function<double(double)>& D, long m, double lo, double hi,
                    double dlo, double dhi, double* residual) {
    const double target = m * M_PI;
    auto f = [&](double x) { return D(x) - target; };
    double flo = dlo - target, fhi = dhi - target;
    if (flo == 0.0) {
        if (residual) *residual = 0.0;
        return lo;
    }
    if (fhi == 0.0) {
        if (residual) *residual = 0.0;
        return hi;
    }
    boost::uintmax_t it = 100;
    auto tol = [](double a, double b) {
        return std::abs(b - a) <= 1e-12 * std::max(1.0, std::abs(a));
    };
    auto br = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, it);
    double x = 0.5 * (br.first + br.second);
    if (residual) *residual = std::abs(f(x));
    return x;
}

}  // namespace

SpectrumWindow angular_eigenvalues(const BlackHoleParams& p, const ModeContext& ctx, double lo,
                                   double hi, const AngularOptions& opt) {
    if (!(hi > lo)) throw Error(ErrorCode::InvalidParams, "empty eigenvalue window");
    auto D = [&](double x) { return matching_defect(p, ctx, x, opt); };

    // Brackets of width ≤ 0.5.
    int cells = std::max(1, static_cast<int>(std::ceil((hi - lo) / 0.5)));
    std::vector<double> xs(cells + 1), ds(cells + 1);
    for (int i = 0; i <= cells; ++i) {
        xs[i] = lo + (hi - lo) * i / cells;
        ds[i] = D(xs[i]);
    }
    SpectrumWindow w;
    w.lo = lo;
    w.hi = hi;
    long m_lo = static_cast<long>(std::floor(ds.front() / M_PI));
    long m_hi = static_cast<long>(std::floor(ds.back() / M_PI));
    w.winding_count = m_hi - m_lo;
    if (w.winding_count > 1000)
        throw Error(ErrorCode::WindowTooWide, "more than 1000 eigenvalues requested");

    for (int i = 0; i < cells; ++i) {
        long a = static_cast<long>(std::floor(ds[i] / M_PI));
        long b = static_cast<long>(std::floor(ds[i + 1] / M_PI));
        for (long m = a + 1; m <= b; ++m) {
            double res = 0.0;
            double x = solve_branch(D, m, xs[i], xs[i + 1], ds[i], ds[i + 1], &res);
            w.eigenvalues.push_back(x);
            w.residuals.push_back(res);
            w.winding.push_back(m);
        }
    }
    w.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < w.eigenvalues.size(); ++i)
        w.min_gap = std::min(w.min_gap, w.eigenvalues[i] - w.eigenvalues[i - 1]);
    if (!w.eigenvalues.empty()) {
        long m0 = winding_reference(p, ctx, opt);
        for (long m : w.winding) w.labels.push_back(label_from_winding(m, m0));
    }
    return w;
}

double angular_eigenvalue_for_winding(const BlackHoleParams& p, const ModeContext& ctx, long m,
                                      double lo, double hi, const AngularOptions& opt,
                                      double* residual) {
    auto D = [&](double x) { return matching_defect(p, ctx, x, opt); };
    const double target = m * M_PI;
    double dlo = D(lo), dhi = D(hi);
    double step = std::max(0.25, hi - lo);
    for (int it = 0; dlo > target && it < 200; ++it) {
        hi = lo;
        dhi = dlo;
        lo -= step;
        dlo = D(lo);
        step *= 1.5;
    }
    step = std::max(0.25, hi - lo);
    for (int it = 0; dhi < target && it < 200; ++it) {
        lo = hi;
        dlo = dhi;
        hi += step;
        dhi = D(hi);
        step *= 1.5;
    }
    if (!(dlo <= target && dhi >= target))
        throw Error(ErrorCode::IntegratorStall, "could not bracket the requested branch");
    return solve_branch(D, m, lo, hi, dlo, dhi, residual);
}

long winding_reference(const BlackHoleParams& p, const ModeContext& ctx,
                       const AngularOptions& opt) {
    ModeContext c0 = ctx;
    c0.omega = 0.0;
    return static_cast<long>(std::floor(matching_defect(p, c0, 0.0, opt) / M_PI));
}

long label_from_winding(long m, long m0) { return m > m0 ? m - m0 : m - m0 - 1; }
long winding_from_label(long j, long m0) { return j > 0 ? j + m0 : j + m0 + 1; }

double appendixB_p(const BlackHoleParams& p, const ModeContext& ctx, double theta) {
    return -ctx.k * p.xi() / (delta_theta(p, theta) * std::sin(theta));
}

double appendixB_E(const BlackHoleParams& p, const ModeContext& ctx, double theta, double c) {
    if (!(theta > 0.0 && theta < M_PI))
        throw Error(ErrorCode::DomainError, "theta must lie in (0, pi)");
    auto F = [&](double t) {
        double ct = std::cos(t);
        double rot = p.a == 0.0 ? 0.0
                                : (p.a / p.l) * std::log((p.l + p.a * ct) / (p.l - p.a * ct));
        return -0.5 * ctx.k * (rot - std::log((1.0 + ct) / (1.0 - ct)));
    };
    return std::exp(F(theta) - F(c));
}

}  // namespace knads
