// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "knads/angular_solver.hpp"
#include "knads/classify.hpp"
#include "knads/errors.hpp"
#include "knads/fixtures.hpp"
#include "knads/geometry.hpp"
#include "knads/modescan.hpp"
#include "knads/oracle.hpp"
#include "knads/radial_solver.hpp"

using namespace knads;

namespace {

struct Check {
    bool ok = true;
    std::string first_failure;
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) first_failure = what;
        ok = ok && cond;
    }
};

std::mt19937_64& rng() {
    static std::mt19937_64 g(20240611);
    return g;
}

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

BlackHoleParams nonextremal_draw() {
    BlackHoleParams p;
    p.l = uniform(0.5, 3.0);
    p.a = uniform(0.0, 0.9) * p.l;
    p.q_e = uniform(-0.5, 0.5);
    p.q_m = uniform(-0.5, 0.5);
    p.m = std::max(extremal_mass(p.a, p.z2(), p.l), 0.05) * uniform(1.05, 3.0);
    return p;
}

std::vector<FixtureCase> fixtures() {
    static const std::vector<FixtureCase> f = read_fixtures(fixtures_path("fixtures/oracle.json"));
    return f;
}

void criterion1(Check& c) {
    for (int i = 0; i < 100; ++i) {
        BlackHoleParams p = nonextremal_draw();
        HorizonData hz = find_horizons(p);
        c.expect(hz.r_minus.has_value(), "inner horizon missing");
        if (!hz.r_minus) continue;
        Reparam r = reparameterize(hz.r_plus, *hz.r_minus, p.a, p.l);
        c.expect(std::abs(r.m - p.m) <= 1e-10 * p.m, "mass round trip");
        c.expect(std::abs(r.z2 - p.z2()) <= 1e-10 * std::max(p.z2(), p.m * p.m), "charge round trip");
    }
    for (double a : {0.0, 0.3, 0.7}) {
        double me = extremal_mass(a, 0.04, 1.0);
        BlackHoleParams lo{me * (1 - 1e-4), a, 0.2, 0.0, 1.0};
        BlackHoleParams hi{me * (1 + 1e-4), a, 0.2, 0.0, 1.0};
        c.expect(!is_nonextremal(lo) && is_nonextremal(hi), "extremal flip");
    }
}

void criterion2(Check& c) {
    for (int i = -6; i <= 6; ++i) {
        double d = 0.5 * i;
        for (long n = -6; n <= 6; ++n) {
            double k = n + 0.5;
            bool t0 = n <= d - 1 || n >= d;
            bool tpi = n >= -d || n <= -d - 1;
            bool dirac = n <= -1 - 2 * d || n >= -2 * d;
            AngularClass a = classify_angular(d, k, 0.0);
            c.expect((a.at0.verdict == Verdict::LimitPoint) == t0, "theta=0 condition");
            c.expect((a.atpi.verdict == Verdict::LimitPoint) == tpi, "theta=pi condition");
            c.expect(appendix_a_allows(n, d) == (t0 && tpi), "combined intervals");
            c.expect(classify_angular(d, k, 1.0).self_adjoint == dirac, "Dirac-string gauge");
        }
        if (d != std::floor(d)) {
            // Integer part, taken of |d|.
            long whole = static_cast<long>(std::trunc(std::abs(d)));
            std::vector<long> expect{-1 - whole, whole};
            c.expect(quantization_check(d).exceptional_n == expect, "exceptional set");
        } else {
            c.expect(quantization_check(d).exceptional_n.empty(), "integer d has no exceptions");
        }
    }
}

void criterion3(Check& c) {
    BlackHoleParams p;
    p.a = 0.3;
    p.q_e = 0.2;
    for (double ml : {0.1, 0.3, 0.49, 0.5, 1.0}) {
        ModeContext ctx;
        ctx.mu = ml / p.l;
        L2TailReport t = infinity_l2_tail(p, ctx);
        Verdict expect = ml < 0.5 ? Verdict::LimitCircle : Verdict::LimitPoint;
        c.expect(t.verdict == expect, "L2 tail verdict at mu l = " + std::to_string(ml));
        GrowthReport g = infinity_growth_exponents(p, ctx, 1.3, 0.2);
        c.expect(std::abs(g.outward - ml) < 1e-2 && std::abs(g.inward + ml) < 1e-2,
                 "growth exponents at mu l = " + std::to_string(ml));
    }
}

void criterion4(Check& c) {
    BlackHoleParams p;
    ModeContext sphere;
    sphere.mu = 0.0;
    SpectrumWindow w = angular_eigenvalues(p, sphere, -4.5, 4.5);
    const double expect[] = {-4, -3, -2, -1, 1, 2, 3, 4};
    c.expect(w.eigenvalues.size() == 8, "sphere count");
    auto live = oracle_clean(oracle_eigenvalues(discretize_angular(p, sphere, 4000), -4.5, 4.5));
    c.expect(live.size() == 8, "sphere oracle count");
    for (std::size_t i = 0; i < 8 && i < w.eigenvalues.size() && i < live.size(); ++i) {
        c.expect(std::abs(w.eigenvalues[i] - expect[i]) < 1e-8, "sphere shooting");
        c.expect(std::abs(live[i] - expect[i]) < 1e-5, "sphere oracle");
    }
    int rotating = 0;
    for (const auto& f : fixtures()) {
        if (f.kind != "angular" || f.name == "sphere") continue;
        ++rotating;
        SpectrumWindow s = angular_eigenvalues(f.params, f.ctx, f.lo, f.hi);
        c.expect(s.winding_count == static_cast<long>(s.eigenvalues.size()), f.name + " winding count");
        c.expect(s.eigenvalues.size() == f.eigenvalues.size(), f.name + " count vs oracle");
        for (std::size_t i = 0; i < s.eigenvalues.size() && i < f.eigenvalues.size(); ++i)
            c.expect(std::abs(s.eigenvalues[i] - f.eigenvalues[i]) < 1e-5, f.name + " vs oracle");
    }
    c.expect(rotating == 5, "five rotating fixtures");
}

void criterion5(Check& c) {
    for (int i = 0; i < 20; ++i) {
        BlackHoleParams p;
        p.l = uniform(0.5, 3.0);
        p.a = uniform(0.0, 0.9) * p.l;
        p.q_e = uniform(-0.5, 0.5);
        p.q_m = uniform(-0.5, 0.5);
        ModeContext ctx;
        ctx.mu = uniform(0.0, 2.0);
        ctx.omega = uniform(-2.0, 2.0);
        for (;;) {
            ctx.e = uniform(-2.0, 2.0);
            ctx.k = std::uniform_int_distribution<long>(-3, 2)(rng()) + 0.5;
            double d = monopole_d(p, ctx);
            if (std::abs(ctx.k - d) >= 0.5 && std::abs(ctx.k + d) >= 0.5) break;
        }
        ModeContext other = ctx;
        other.omega += uniform(-1.0, 1.0);
        long m0 = winding_reference(p, ctx);
        for (long j : {-3L, -2L, -1L, 1L, 2L, 3L}) {
            long m = winding_from_label(j, m0);
            double l1 = angular_eigenvalue_for_winding(p, ctx, m, -1, 1);
            double l2 = angular_eigenvalue_for_winding(p, other, m, -1, 1);
            c.expect(std::abs(l1 - l2) <= p.a * std::abs(ctx.omega - other.omega) + 1e-8,
                     "Lipschitz bound, draw " + std::to_string(i));
        }
    }
}

void criterion6(Check& c) {
    BlackHoleParams p;
    p.a = 0.2;
    p.q_e = 0.1;
    ModeContext ctx;
    RadialCertificate l1 = l1_certificate(p, ctx, 1.0);
    c.expect(l1.pass && l1.evidence["tail_ratio"] < 0.05, "L1 tail ratio");

    BlackHoleParams e = p;
    e.m = extremal_mass(e.a, e.z2(), e.l);
    RadialCertificate ces = horizon_ac_certificate(e, ctx, 1.0);
    c.expect(ces.kind == "Extremal_Cesaro" && ces.pass, "extremal Cesaro");
    c.expect(!l1_certificate(e, ctx, 1.0).pass, "extremal L1 must diverge");

    RadialCertificate lev = levinson_phi_plus(p, ctx, 1.0);
    c.expect(lev.pass, "Levinson at threshold");
    c.expect(std::min(lev.evidence["min_norm_ratio_I"], lev.evidence["min_norm_ratio_II"]) >= 0.5,
             "Levinson lower bound");
}

void criterion7(Check& c) {
    int seen = 0;
    for (const auto& f : fixtures()) {
        if (f.kind != "radial") continue;
        ++seen;
        RadialOptions opt;
        opt.r0 = f.r0;
        SpectrumWindow w = hinf_eigenvalues(f.params, f.ctx, f.lambda, f.lo, f.hi, opt);
        c.expect(w.winding_count == static_cast<long>(w.eigenvalues.size()), f.name + " finite count");
        RadialOptions fine = opt;
        fine.x_cut = opt.x_cut / 10;
        SpectrumWindow wf = hinf_eigenvalues(f.params, f.ctx, f.lambda, f.lo, f.hi, fine);
        c.expect(wf.eigenvalues.size() == w.eigenvalues.size(), f.name + " cutoff count");
        for (std::size_t i = 0; i < w.eigenvalues.size() && i < wf.eigenvalues.size(); ++i)
            c.expect(std::abs(w.eigenvalues[i] - wf.eigenvalues[i]) < 1e-6, f.name + " cutoff");
        c.expect(w.eigenvalues.size() == f.eigenvalues.size(), f.name + " oracle count");
        for (std::size_t i = 0; i < w.eigenvalues.size() && i < f.eigenvalues.size(); ++i)
            c.expect(std::abs(w.eigenvalues[i] - f.eigenvalues[i]) < 1e-4, f.name + " vs oracle");
    }
    c.expect(seen == 3, "three radial fixtures");
    BlackHoleParams p;
    ModeContext flat;
    flat.mu = 0.0;
    bool raised = false;
    try {
        hinf_eigenvalues(p, flat, 1.0, -5, 5);
    } catch (const Error& e) {
        raised = e.code() == ErrorCode::NotConfining;
    }
    c.expect(raised, "massless control raises NotConfining");
}

void criterion8(Check& c) {
    BlackHoleParams p;
    p.a = 0.2;
    p.q_e = 0.1;
    ModeContext ctx;
    ctx.e = 0.1;
    ScanResult s = coupled_scan(p, ctx, omega_range(-2, 2, 0.05));
    c.expect(s.verdict == "NoBoundStateFound", "fixture verdict");
    ScanResult h = coupled_scan(p, ctx, omega_range(-2, 2, 0.025));
    c.expect(h.verdict == s.verdict, "verdict under step halving");
    inject_fake_bound_state(s, 1.0, 2);
    c.expect(periodicity_verdict(s, 2 * M_PI).verdict == "PeriodicCandidate", "injected mode");
}

void criterion9(Check& c) {
    using boost::math::quadrature::gauss_kronrod;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        BlackHoleParams p;
        p.l = uniform(0.5, 3.0);
        p.a = uniform(0.0, 0.95) * p.l;
        ModeContext ctx;
        ctx.k = std::uniform_int_distribution<long>(-5, 4)(rng()) + 0.5;
        double th = uniform(0.01, M_PI - 0.01);
        double q = gauss_kronrod<double, 31>::integrate(
            [&](double t) { return appendixB_p(p, ctx, t); }, M_PI / 2, th, 15, 1e-12);
        double rel = std::abs(appendixB_E(p, ctx, th) / std::exp(q) - 1.0);
        worst = std::max(worst, rel);
    }
    std::printf("  worst relative deviation %.3g over 1000 samples\n", worst);
    c.expect(worst < 1e-8, "closed form vs quadrature");
}

}  // namespace

int main() {
    struct Item {
        int id;
        const char* name;
        double budget;
        std::function<void(Check&)> run;
    };
    const std::vector<Item> items{
        {1, "geometry round trip and extremal flip", 1, criterion1},
        {2, "classification tables", 1, criterion2},
        {3, "infinity threshold at mu l = 1/2", 30, criterion3},
        {4, "angular spectrum vs sphere and oracle", 300, criterion4},
        {5, "frequency Lipschitz bound", 120, criterion5},
        {6, "radial certificates", 120, criterion6},
        {7, "h_inf discreteness", 180, criterion7},
        {8, "empty point spectrum scan", 600, criterion8},
        {9, "closed-form angular weight", 5, criterion9},
    };
    int failed = 0;
    for (const auto& it : items) {
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            it.run(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.expect(dt < it.budget, "over time budget");
        std::printf("%s %d %s (%.2f s, budget %.0f s)%s%s\n", c.ok ? "PASS" : "FAIL", it.id, it.name,
                    dt, it.budget, c.ok ? "" : ": ", c.first_failure.c_str());
        std::fflush(stdout);
        failed += c.ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
