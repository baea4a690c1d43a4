#include "knads/radial_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "knads/errors.hpp"
#include "knads/quadrature.hpp"

namespace knads {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Prüfer rates for X' = J S X with S symmetric: η' = −(Se|e), (log ρ)' = (e|JSe).
inline void prufer_rates(double s11, double s12, double s22, double eta, double& deta,
                         double& dlr) {
    double c = std::cos(eta), s = std::sin(eta);
    deta = -(s11 * c * c + 2.0 * s12 * s * c + s22 * s * s);
    dlr = s12 * (c * c - s * s) + (s22 - s11) * s * c;
}

double frob_dev(const Sym2& v, double phi) {
    double d1 = v.a11 - phi, d2 = v.a22 - phi;
    return std::sqrt(d1 * d1 + d2 * d2 + 2.0 * v.a12 * v.a12);
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx > 0 ? sxy / sxx : 0.0;
}

struct InfinityRun {
    double eta = 0, log_rho = 0;
    std::vector<double> t, lr;
};

// Recessive solution at infinity integrated in t = log r from the cutoff down to r₀.
InfinityRun run_from_infinity(const RadialBackground& bg, const ModeContext& ctx, double lambda,
                              double omega, const RadialOptions& opt, bool record) {
    const auto& p = bg.p;
    const double ml = ctx.mu * p.l;
    omega -= opt.shift;
    const double rc = bg.tortoise.r_of_x(opt.x_cut);
    if (!(rc > bg.r0)) throw Error(ErrorCode::InvalidParams, "cutoff lies inside r0");
    const double xi = 1.0 / rc;
    const double w = -lambda * p.l + omega * p.l * p.l;
    const double corr = xi * w / (2.0 * ml + 1.0);
    InfinityRun out;
    std::array<double, 2> st{std::atan2(1.0 - corr, 1.0 + corr), 0.0};
    auto rhs = [&](double t, const std::array<double, 2>& s, std::array<double, 2>& ds) {
        double r = std::exp(t);
        double jac = r * (r * r + p.a * p.a) / delta_r(p, r);
        Sym2 v = radial_potential(p, bg.hz, ctx, lambda, r);
        double de, dl;
        prufer_rates(v.a11 - omega, v.a12, v.a22 - omega, s[0], de, dl);
        ds[0] = jac * de;
        ds[1] = jac * dl;
    };
    const double t0 = std::log(rc), t1 = std::log(bg.r0);
    if (record) {
        out.t.push_back(t0);
        out.lr.push_back(0.0);
    }
    ode::integrate<2>(
        rhs, st, t0, t1, 1e-2, opt.tol, [](double) { return 0.25; },
        [&](double t, const std::array<double, 2>& s) {
            if (record) {
                out.t.push_back(t);
                out.lr.push_back(s[1]);
            }
            return true;
        });
    out.eta = st[0];
    out.log_rho = st[1];
    return out;
}

// u = log(r − r₊) panels with width ≤ 0.5 covering [ua, ub].
template <class F>
double panel_sum(F&& f, double ua, double ub) {
    if (!(ub > ua)) return 0.0;
    int n = std::max(1, static_cast<int>(std::ceil((ub - ua) / 0.5)));
    double h = (ub - ua) / n, s = 0.0;
    for (int i = 0; i < n; ++i) s += quad::gl20_integrate(f, ua + i * h, ua + (i + 1) * h);
    return s;
}

// ∫ |V − φ₊| dy over u ∈ (−∞, ub], integrated downward until the panels stop contributing.
double deviation_tail(const std::function<double(double)>& f, double ub) {
    double total = 0.0;
    int quiet = 0;
    for (double u = ub; quiet < 8; u -= 0.5) {
        double piece = quad::gl20_integrate(f, u - 0.5, u);
        total += piece;
        quiet = piece <= 1e-17 * total ? quiet + 1 : 0;
        if (u < -1e7) throw Error(ErrorCode::QuadratureFailure, "horizon tail does not decay");
    }
    return total;
}

double solve_branch(const std::function<double(double)>& F, long m, double lo, double hi,
                    double flo, double fhi, double* residual) {
    const double target = m * M_PI;
    auto f = [&](double x) { return F(x) - target; };
    flo -= target;
    fhi -= target;
    if (flo == 0.0 || fhi == 0.0) {
        if (residual) *residual = 0.0;
        return flo == 0.0 ? lo : hi;
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

RadialBackground::RadialBackground(const BlackHoleParams& params, double r0_request)
    : p(params), hz(find_horizons(params)), tortoise(params, hz), r0(0.0) {
    r0 = r0_request > 0.0 ? r0_request : hz.r_plus + p.l;
    if (!(r0 > hz.r_plus)) throw Error(ErrorCode::OutsideExterior, "r0 must exceed r_plus");
}

double hinf_phase(const RadialBackground& bg, const ModeContext& ctx, double lambda,
                  double omega, const RadialOptions& opt) {
    return -(run_from_infinity(bg, ctx, lambda, omega, opt, false).eta + opt.beta);
}

SpectrumWindow hinf_eigenvalues(const BlackHoleParams& p, const ModeContext& ctx, double lambda,
                                double lo, double hi, const RadialOptions& opt) {
    validate(p);
    validate(ctx);
    if (ctx.mu == 0.0) throw Error(ErrorCode::NotConfining, "h_inf needs a massive field");
    if (ctx.mu * p.l < 0.5)
        throw Error(ErrorCode::NotLimitPoint, "limit circle at infinity needs a boundary condition");
    if (!(hi > lo)) throw Error(ErrorCode::InvalidParams, "empty eigenvalue window");
    RadialBackground bg(p, opt.r0);
    auto F = [&](double w) { return hinf_phase(bg, ctx, lambda, w, opt); };

    int cells = std::max(1, static_cast<int>(std::ceil((hi - lo) / 0.5)));
    std::vector<double> xs(cells + 1), fs(cells + 1);
    for (int i = 0; i <= cells; ++i) {
        xs[i] = lo + (hi - lo) * i / cells;
        fs[i] = F(xs[i]);
    }
    SpectrumWindow w;
    w.lo = lo;
    w.hi = hi;
    w.winding_count = static_cast<long>(std::floor(fs.back() / M_PI)) -
                      static_cast<long>(std::floor(fs.front() / M_PI));
    if (w.winding_count > 1000)
        throw Error(ErrorCode::WindowTooWide, "more than 1000 eigenvalues requested");
    for (int i = 0; i < cells; ++i) {
        long a = static_cast<long>(std::floor(fs[i] / M_PI));
        long b = static_cast<long>(std::floor(fs[i + 1] / M_PI));
        for (long m = a + 1; m <= b; ++m) {
            double res = 0.0;
            w.eigenvalues.push_back(solve_branch(F, m, xs[i], xs[i + 1], fs[i], fs[i + 1], &res));
            w.residuals.push_back(res);
            w.winding.push_back(m);
            w.labels.push_back(m);
        }
    }
    w.min_gap = kInf;
    for (std::size_t i = 1; i < w.eigenvalues.size(); ++i)
        w.min_gap = std::min(w.min_gap, w.eigenvalues[i] - w.eigenvalues[i - 1]);
    return w;
}

std::vector<double> horizon_deviation_integrals(const RadialBackground& bg,
                                                const ModeContext& ctx, double lambda,
                                                const std::vector<double>& ys) {
    const double phi = phi_plus(bg.p, bg.hz, ctx);
    auto f = [&](double u) {
        Sym2 v = radial_potential_near(bg.p, bg.hz, ctx, lambda, std::exp(u));
        return frob_dev(v, phi) * std::abs(bg.tortoise.dy_du(u));
    };
    const double uc = std::log(bg.r0 - bg.hz.r_plus);
    const double yc = bg.tortoise.y_of_r(bg.r0);
    std::vector<double> sorted = ys;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    double acc = 0.0, u_prev = uc;
    bool quiet = false;
    for (double Y : sorted) {
        if (!(Y > yc)) {
            out.push_back(0.0);
            continue;
        }
        double uY = bg.tortoise.u_of_y(Y);
        if (!quiet) {
            double piece = panel_sum(f, uY, u_prev);
            // Far below the scale of the accumulated integral the remaining panels are zero.
            if (!bg.hz.extremal && acc > 0 && piece <= 1e-17 * acc) quiet = true;
            acc += piece;
        }
        u_prev = uY;
        out.push_back(acc);
    }
    std::vector<double> res(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
        auto it = std::find(sorted.begin(), sorted.end(), ys[i]);
        res[i] = out[it - sorted.begin()];
    }
    return res;
}

RadialCertificate l1_certificate(const BlackHoleParams& p, const ModeContext& ctx,
                                 double lambda) {
    validate(p);
    validate(ctx);
    RadialBackground bg(p);
    const std::vector<double> ys{1e2, 1e3, 1e4};
    auto I = horizon_deviation_integrals(bg, ctx, lambda, ys);
    RadialCertificate c;
    c.kind = "Hor_AC_L1";
    for (std::size_t i = 0; i < ys.size(); ++i) c.series.emplace_back(ys[i], I[i]);
    double t1 = I[1] - I[0], t2 = I[2] - I[1];
    double ratio = t1 > 0 ? t2 / t1 : (t2 > 0 ? kInf : 0.0);
    double rel_tail = I[2] > 0 ? t2 / I[2] : 0.0;
    c.evidence["I_1e2"] = I[0];
    c.evidence["I_1e3"] = I[1];
    c.evidence["I_1e4"] = I[2];
    c.evidence["tail_ratio"] = ratio;
    c.evidence["rel_tail"] = rel_tail;
    c.evidence["c"] = bg.tortoise.y_of_r(bg.r0);
    c.pass = ratio < 0.05 && rel_tail < 0.01;
    return c;
}

RadialCertificate cesaro_certificate(const BlackHoleParams& p, const ModeContext& ctx,
                                     double lambda) {
    validate(p);
    validate(ctx);
    RadialBackground bg(p);
    const std::vector<double> ys{1e2, 1e3, 1e4};
    auto I = horizon_deviation_integrals(bg, ctx, lambda, ys);
    RadialCertificate c;
    c.kind = "Extremal_Cesaro";
    std::vector<double> means(3);
    for (int i = 0; i < 3; ++i) {
        means[i] = I[i] / ys[i];
        c.series.emplace_back(ys[i], means[i]);
    }
    double rate = (means[1] > 0 && means[2] > 0) ? std::log10(means[2] / means[1]) : -kInf;
    c.evidence["mean_1e2"] = means[0];
    c.evidence["mean_1e3"] = means[1];
    c.evidence["mean_1e4"] = means[2];
    c.evidence["decay_rate"] = rate;
    c.evidence["I_1e4"] = I[2];
    c.pass = means[2] <= means[1] && means[1] <= means[0] && rate < -0.5;
    return c;
}

RadialCertificate horizon_ac_certificate(const BlackHoleParams& p, const ModeContext& ctx,
                                         double lambda) {
    validate(p);
    HorizonData hz = find_horizons(p);
    if (!hz.extremal) return l1_certificate(p, ctx, lambda);
    RadialCertificate c = cesaro_certificate(p, ctx, lambda);
    RadialCertificate l1 = l1_certificate(p, ctx, lambda);
    c.evidence["l1_tail_ratio"] = l1.evidence["tail_ratio"];
    c.evidence["l1_pass"] = l1.pass ? 1.0 : 0.0;
    return c;
}

RadialCertificate levinson_phi_plus(const BlackHoleParams& p, const ModeContext& ctx,
                                    double lambda) {
    validate(p);
    validate(ctx);
    RadialBackground bg(p);
    if (bg.hz.extremal)
        throw Error(ErrorCode::ExtremalUnsupported, "Levinson check needs a non-extremal hole");
    const double phi = phi_plus(p, bg.hz, ctx);
    const auto& T = bg.tortoise;
    auto dev = [&](double u) {
        Sym2 v = radial_potential_near(p, bg.hz, ctx, lambda, std::exp(u));
        return frob_dev(v, phi) * std::abs(T.dy_du(u));
    };

    // Move c towards the horizon until the tail integral of |R̄| is at most 1/4.
    double c = std::max(1.0, T.y_of_r(bg.r0));
    double uc = T.u_of_y(c), tail = deviation_tail(dev, uc);
    for (int it = 0; tail > 0.25 && it < 60; ++it) {
        c *= 2.0;
        uc = T.u_of_y(c);
        tail = deviation_tail(dev, uc);
    }
    RadialCertificate cert;
    cert.kind = "Levinson_phi_plus";
    cert.evidence["c"] = c;
    cert.evidence["tail_integral"] = tail;
    if (tail > 0.25) return cert;

    // X_u = (dy/du) R̄ X with R̄ = J(φ₊ − V), for the two solutions starting at e₁ and e₂.
    auto rhs = [&](double u, const std::array<double, 4>& s, std::array<double, 4>& ds) {
        Sym2 v = radial_potential_near(p, bg.hz, ctx, lambda, std::exp(u));
        double g = T.dy_du(u);
        double s11 = phi - v.a11, s12 = -v.a12, s22 = phi - v.a22;
        for (int k = 0; k < 2; ++k) {
            double x1 = s[2 * k], x2 = s[2 * k + 1];
            ds[2 * k] = g * (s12 * x1 + s22 * x2);
            ds[2 * k + 1] = -g * (s11 * x1 + s12 * x2);
        }
    };
    std::array<double, 4> st{1.0, 0.0, 0.0, 1.0};
    double min1 = 1.0, min2 = 1.0;
    auto obs = [&](double, const std::array<double, 4>& s) {
        min1 = std::min(min1, std::hypot(s[0], s[1]));
        min2 = std::min(min2, std::hypot(s[2], s[3]));
        return true;
    };
    auto cap = [](double) { return 0.5; };
    double worst_change = 0.0;
    std::array<double, 4> prev{};
    double u_from = uc;
    const std::array<double, 4> ladder{1e3, 2e3, 1e4, 2e4};
    std::vector<std::array<double, 4>> at(4);
    for (int i = 0; i < 4; ++i) {
        double Y = std::max(ladder[i], c);
        double uY = T.u_of_y(Y);
        ode::integrate<4>(rhs, st, u_from, uY, -0.1, {1e-13, 1e-12}, cap, obs);
        u_from = uY;
        at[i] = st;
    }
    for (int pair = 0; pair < 2; ++pair) {
        const auto& a = at[2 * pair];
        const auto& b = at[2 * pair + 1];
        for (int k = 0; k < 2; ++k) {
            double na = std::hypot(a[2 * k], a[2 * k + 1]);
            double dn = std::hypot(a[2 * k] - b[2 * k], a[2 * k + 1] - b[2 * k + 1]);
            if (pair == 1) worst_change = std::max(worst_change, dn / na);
        }
    }
    prev = at[3];
    double det = prev[0] * prev[3] - prev[1] * prev[2];
    // Angle of each limit to its starting axis.
    double tilt1 = std::abs(std::atan2(prev[1], prev[0]));
    double tilt2 = std::abs(std::atan2(-prev[2], prev[3]));
    cert.evidence["min_norm_ratio_I"] = min1;
    cert.evidence["min_norm_ratio_II"] = min2;
    cert.evidence["det_minus_one"] = std::abs(det - 1.0);
    cert.evidence["rel_change_per_doubling"] = worst_change;
    cert.evidence["tilt_I"] = tilt1;
    cert.evidence["tilt_II"] = tilt2;
    for (int i = 0; i < 4; ++i)
        cert.series.emplace_back(ladder[i], std::hypot(at[i][0], at[i][1]));
    cert.pass = min1 >= 0.5 && min2 >= 0.5 && std::abs(det - 1.0) < 1e-8 && worst_change < 1e-4;
    return cert;
}

namespace {

struct HorizonRun {
    std::vector<double> y, eta, log_rho;
};

// Prüfer phase and radius from r₀ towards the horizon in u, recording y ∈ [Y/10, Y].
HorizonRun run_to_horizon(const RadialBackground& bg, const ModeContext& ctx, double lambda,
                          double omega, double eta0, double lr0, double Y) {
    const auto& T = bg.tortoise;
    auto rhs = [&](double u, const std::array<double, 2>& s, std::array<double, 2>& ds) {
        Sym2 v = radial_potential_near(bg.p, bg.hz, ctx, lambda, std::exp(u));
        double g = T.dy_du(u);
        double de, dl;
        prufer_rates(v.a11 - omega, v.a12, v.a22 - omega, s[0], de, dl);
        // d/dy = −d/dx.
        ds[0] = -g * de;
        ds[1] = -g * dl;
    };
    const double ua = std::log(bg.r0 - bg.hz.r_plus);
    const double u_dec = T.u_of_y(Y / 10.0), uY = T.u_of_y(Y);
    std::array<double, 2> st{eta0, lr0};
    ode::Tolerance tol{1e-11, 1e-11};
    if (u_dec < ua) ode::integrate<2>(rhs, st, ua, u_dec, -0.05, tol);
    HorizonRun run;
    run.y.push_back(Y / 10.0);
    run.eta.push_back(st[0]);
    run.log_rho.push_back(st[1]);
    const double cap_du = (u_dec - uY) / 200.0;
    ode::integrate<2>(
        rhs, st, u_dec, uY, -cap_du, tol, [&](double) { return cap_du; },
        [&](double u, const std::array<double, 2>& s) {
            run.y.push_back(T.y_of_u(u));
            run.eta.push_back(s[0]);
            run.log_rho.push_back(s[1]);
            return true;
        });
    return run;
}

}  // namespace

OscillationReport horizon_oscillation(const BlackHoleParams& p, const ModeContext& ctx,
                                      double lambda, double omega, double Y) {
    validate(p);
    validate(ctx);
    RadialBackground bg(p);
    if (bg.hz.extremal)
        throw Error(ErrorCode::ExtremalUnsupported, "oscillation test needs a non-extremal hole");
    const double phi = phi_plus(p, bg.hz, ctx);
    if (std::abs(omega - phi) < 1e-6)
        throw Error(ErrorCode::TooCloseToPhiPlus, "omega within 1e-6 of phi_plus");
    HorizonRun run = run_to_horizon(bg, ctx, lambda, omega, 0.0, 0.0, Y);
    OscillationReport rep;
    std::vector<double> neg(run.eta.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -run.eta[i];
    rep.slope = lsq_slope(run.y, neg);
    rep.expected = omega - phi;
    rep.rel_error = std::abs(rep.slope - rep.expected) / std::abs(rep.expected);
    auto [lo, hi] = std::minmax_element(run.log_rho.begin(), run.log_rho.end());
    rep.radius_ratio = std::exp(*hi - *lo);
    rep.pass = rep.rel_error < 1e-3 && rep.radius_ratio < 10.0;
    for (std::size_t i = 0; i < run.y.size(); ++i) rep.trace.emplace_back(run.y[i], run.eta[i]);
    return rep;
}

TransportReport radial_transport(const RadialBackground& bg, const ModeContext& ctx,
                                 double lambda, double omega, double Y,
                                 const RadialOptions& opt) {
    TransportReport rep;
    InfinityRun inf = run_from_infinity(bg, ctx, lambda, omega, opt, true);
    {
        // Fit over the decade next to the cutoff.
        std::vector<double> t, lr;
        const double t_stop = inf.t.front() - std::log(10.0);
        for (std::size_t i = 0; i < inf.t.size() && inf.t[i] >= t_stop; ++i) {
            t.push_back(inf.t[i]);
            lr.push_back(inf.lr[i]);
        }
        rep.decay_exponent = lsq_slope(t, lr);
    }
    const double phi = phi_plus(bg.p, bg.hz, ctx);
    if (std::abs(omega - phi) < 1e-6) {
        rep.used_levinson = true;
        RadialCertificate lev = levinson_phi_plus(bg.p, ctx, lambda);
        rep.amplitude_ratio = lev.pass ? std::min(lev.evidence["min_norm_ratio_I"],
                                                  lev.evidence["min_norm_ratio_II"])
                                       : 0.0;
        return rep;
    }
    HorizonRun run = run_to_horizon(bg, ctx, lambda, omega, inf.eta, 0.0, Y);
    rep.amplitude_ratio = std::exp(*std::min_element(run.log_rho.begin(), run.log_rho.end()));
    std::vector<double> neg(run.eta.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -run.eta[i];
    rep.slope = lsq_slope(run.y, neg);
    return rep;
}

L2TailReport infinity_l2_tail(const BlackHoleParams& p, const ModeContext& ctx) {
    validate(p);
    validate(ctx);
    HorizonData hz = find_horizons(p);
    L2TailReport rep;
    rep.mu_l = ctx.mu * p.l;
    const double pw = 2.0 * rep.mu_l;
    auto f = [&](double t) {
        double r = std::exp(t);
        return r * std::pow(r, pw) * (r * r + p.a * p.a) / delta_r(p, r);
    };
    const int k0 = static_cast<int>(std::ceil(std::log10(10.0 * std::max(hz.r_plus, p.l))));
    const double ln10 = std::log(10.0);
    for (int k = k0; k < k0 + 8; ++k) {
        double a = k * ln10, s = 0.0;
        for (int j = 0; j < 8; ++j) s += quad::gl20_integrate(f, a + j * ln10 / 8, a + (j + 1) * ln10 / 8);
        rep.decade_increments.push_back(s);
    }
    const auto& D = rep.decade_increments;
    rep.ratio_exponent = std::log10(D.back() / D[D.size() - 2]);
    rep.converges = rep.ratio_exponent < -1e-3;
    rep.verdict = rep.converges ? Verdict::LimitCircle : Verdict::LimitPoint;
    return rep;
}

GrowthReport infinity_growth_exponents(const BlackHoleParams& p, const ModeContext& ctx,
                                       double lambda, double omega) {
    validate(p);
    validate(ctx);
    HorizonData hz = find_horizons(p);
    auto rhs = [&](double t, const std::array<double, 2>& s, std::array<double, 2>& ds) {
        double r = std::exp(t);
        double jac = r * (r * r + p.a * p.a) / delta_r(p, r);
        Sym2 v = radial_potential(p, hz, ctx, lambda, r);
        double de, dl;
        prufer_rates(v.a11 - omega, v.a12, v.a22 - omega, s[0], de, dl);
        ds[0] = jac * de;
        ds[1] = jac * dl;
    };
    const double ln10 = std::log(10.0);
    const double t_in = std::log(hz.r_plus + p.l);
    auto cap = [](double) { return 0.5; };
    auto keep = [](double, const std::array<double, 2>&) { return true; };
    GrowthReport g;
    std::array<double, 2> st{0.3, 0.0};
    ode::integrate<2>(rhs, st, t_in, 20 * ln10, 1e-2, {1e-11, 1e-11}, cap, keep);
    double l20 = st[1];
    ode::integrate<2>(rhs, st, 20 * ln10, 40 * ln10, 1e-2, {1e-11, 1e-11}, cap, keep);
    g.outward = (st[1] - l20) / (20 * ln10);
    st = {0.3, 0.0};
    ode::integrate<2>(rhs, st, 40 * ln10, 20 * ln10, -1e-2, {1e-11, 1e-11}, cap, keep);
    l20 = st[1];
    ode::integrate<2>(rhs, st, 20 * ln10, 10 * ln10, -1e-2, {1e-11, 1e-11}, cap, keep);
    g.inward = (l20 - st[1]) / (10 * ln10);
    return g;
}

std::pair<double, double> appendixC_integral(const BlackHoleParams& p, const ModeContext& ctx,
                                             double r0, double R) {
    validate(p);
    validate(ctx);
    HorizonData hz = find_horizons(p);
    if (!(r0 > hz.r_plus) || !(R > r0))
        throw Error(ErrorCode::OutsideExterior, "need r_plus < r0 < R");
    auto f = [&](double t) {
        double r = std::exp(t);
        return r * appendixC_Q(p, hz, ctx, r);
    };
    double val = panel_sum(f, std::log(r0), std::log(R));
    return {val, f(std::log(R))};
}

}  // namespace knads
