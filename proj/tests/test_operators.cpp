#include <doctest.h>

#include <cmath>

#include "knads/angular_solver.hpp"
#include "knads/errors.hpp"
#include "knads/operators.hpp"
#include "knads/radial_solver.hpp"
#include "support.hpp"

using namespace knads;

TEST_CASE("mode context validation") {
    ModeContext c;
    CHECK_NOTHROW(validate(c));
    CHECK(wave_n(c) == 0);
    c.k = -2.5;
    CHECK(wave_n(c) == -3);
    c.k = 1.0;
    CHECK_THROWS_AS(validate(c), Error);
    c.k = 0.5;
    c.mu = -1.0;
    CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("monopole number is derived from the background") {
    BlackHoleParams p;
    p.a = 0.5;
    p.q_m = 0.75;
    ModeContext c;
    c.e = 2.0;
    CHECK(monopole_d(p, c) == doctest::Approx(0.75 * 2.0 / 0.75));
}

TEST_CASE("angular matrix") {
    BlackHoleParams p;
    ModeContext c;
    Sym2 m = angular_matrix(p, c, M_PI / 2);
    CHECK(m.a11 == doctest::Approx(-0.5));
    CHECK(m.a12 == doctest::Approx(0.0));
    CHECK(m.a22 == doctest::Approx(0.5));
    CHECK_THROWS_AS(angular_matrix(p, c, 0.0), Error);
    CHECK_THROWS_AS(angular_matrix(p, c, M_PI), Error);

    SUBCASE("gauge shift of sigma") {
        p.a = 0.4;
        p.q_m = 0.3;
        c.e = 1.5;
        c.gauge_b = 1.0;
        c.omega = 0.8;
        double th = 1.1, d = monopole_d(p, c), dt = delta_theta(p, th);
        double A = p.xi() * (d * (std::cos(th) - 1.0) - c.k) / (std::sqrt(dt) * std::sin(th));
        double B = p.a * c.omega * std::sin(th) / std::sqrt(dt);
        Sym2 g = angular_matrix(p, c, th);
        CHECK(g.a11 == doctest::Approx(A + B).epsilon(1e-14));
        CHECK(g.a22 == doctest::Approx(-A - B).epsilon(1e-14));
        CHECK(g.a12 == doctest::Approx(-c.mu * p.a * std::cos(th)).epsilon(1e-14));
    }
    SUBCASE("sphere limit is frequency independent") {
        for (double th : {0.1, 1.0, 2.5}) {
            ModeContext c1 = c, c2 = c, c3 = c;
            c2.omega = 1.0;
            c3.omega = 10.0;
            Sym2 a = angular_matrix(p, c1, th), b = angular_matrix(p, c2, th), d = angular_matrix(p, c3, th);
            CHECK(a.a11 == b.a11);
            CHECK(a.a11 == d.a11);
            CHECK(a.a22 == d.a22);
            CHECK(prufer_rhs(p, c1, th, 0.3, 1.2) == prufer_rhs(p, c3, th, 0.3, 1.2));
        }
    }
}

TEST_CASE("prufer rhs") {
    BlackHoleParams p;
    ModeContext c;
    CHECK(prufer_rhs(p, c, M_PI / 2, 0.0, 0.0) == doctest::Approx(0.5));
    p.a = 0.6;
    c.omega = 0.3;
    c.mu = 1.4;
    double th = 0.9, eta = 0.4, h = 1e-3;
    double d = (prufer_rhs(p, c, th, eta, 1.0 + h) - prufer_rhs(p, c, th, eta, 1.0 - h)) / (2 * h);
    CHECK(d == doctest::Approx(1.0 / std::sqrt(delta_theta(p, th))).epsilon(1e-10));
}

TEST_CASE("radial potential") {
    SUBCASE("horizon limit is phi_plus times identity") {
        BlackHoleParams p;
        p.a = 0.3;
        p.q_e = 0.1;
        ModeContext c;
        c.e = 2.0;
        HorizonData hz = find_horizons(p);
        double phi = (p.a * p.xi() * c.k + c.e * p.q_e * hz.r_plus) / (hz.r_plus * hz.r_plus + p.a * p.a);
        CHECK(phi_plus(p, hz, c) == doctest::Approx(phi).epsilon(1e-14));
        Sym2 v = radial_potential_near(p, hz, c, 1.3, 1e-14);
        CHECK(v.a11 == doctest::Approx(phi).epsilon(1e-6));
        CHECK(v.a22 == doctest::Approx(phi).epsilon(1e-6));
        CHECK(std::abs(v.a12) < 1e-6);
        Sym2 v0 = radial_potential_near(p, hz, c, 1.3, 0.0);
        CHECK(v0.a11 == doctest::Approx(phi));
        CHECK(v0.a12 == 0.0);
        CHECK_THROWS_AS(radial_potential(p, hz, c, 1.0, 0.5 * hz.r_plus), Error);
    }
    SUBCASE("uncharged static hole has zero threshold") {
        BlackHoleParams p;
        ModeContext c;
        c.e = 3.0;
        CHECK(phi_plus(p, find_horizons(p), c) == 0.0);
    }
    SUBCASE("lambda only off-diagonal, mu only diagonal") {
        BlackHoleParams p;
        p.a = 0.4;
        p.q_e = 0.2;
        ModeContext c;
        c.e = 0.7;
        HorizonData hz = find_horizons(p);
        Sym2 a = radial_potential(p, hz, c, 0.5, 2.0), b = radial_potential(p, hz, c, 3.0, 2.0);
        CHECK(a.a11 == b.a11);
        CHECK(a.a22 == b.a22);
        CHECK(a.a12 != b.a12);
        ModeContext c2 = c;
        c2.mu = 4.0;
        Sym2 d = radial_potential(p, hz, c2, 0.5, 2.0);
        CHECK(d.a12 == a.a12);
        CHECK(d.a11 != a.a11);
    }
    SUBCASE("confining growth at infinity") {
        BlackHoleParams p;
        p.l = 2.0;
        p.a = 0.3;
        ModeContext c;
        c.mu = 1.5;
        HorizonData hz = find_horizons(p);
        for (double s : {1e2, 1e3}) {
            double r = s * p.l;
            Sym2 v = radial_potential(p, hz, c, 1.0, r);
            CHECK(0.5 * (v.a11 - v.a22) / (c.mu * r / p.l) == doctest::Approx(1.0).epsilon(1e-2));
        }
        ModeContext free = c;
        free.mu = 0.0;
        double worst = 0.0;
        for (double r = hz.r_plus + 1e-3; r < 1e4; r *= 1.5) {
            Sym2 v = radial_potential(p, hz, free, 1.0, r);
            worst = std::max({worst, std::abs(v.a11), std::abs(v.a12)});
        }
        CHECK(worst < 10.0);
    }
    SUBCASE("gauge parameter shifts phi_plus") {
        BlackHoleParams p;
        p.a = 0.5;
        p.q_e = 0.2;
        p.q_m = 0.3;
        ModeContext c;
        c.e = 1.2;
        HorizonData hz = find_horizons(p);
        ModeContext cb = c;
        cb.gauge_b = 0.7;
        double shift = 0.7 * p.q_m * p.a * c.e / (hz.r_plus * hz.r_plus + p.a * p.a);
        CHECK(phi_plus(p, hz, cb) - phi_plus(p, hz, c) == doctest::Approx(shift).epsilon(1e-12));
    }
}

TEST_CASE("discreteness integrand") {
    BlackHoleParams p;
    p.l = 1.5;
    ModeContext c;
    c.mu = 0.0;
    HorizonData hz = find_horizons(p);
    CHECK(appendixC_Q(p, hz, c, 3.0) == 0.0);
    c.mu = 1.2;
    double r = 1e3 * p.l;
    CHECK(appendixC_Q(p, hz, c, r) * r == doctest::Approx(c.mu * p.l).epsilon(1e-4));
    double r0 = hz.r_plus + p.l;
    double i2 = appendixC_integral(p, c, r0, 1e2).first, i4 = appendixC_integral(p, c, r0, 1e4).first;
    CHECK((i4 - i2) / (c.mu * p.l * std::log(100.0)) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(appendixC_integral(p, c, r0, 1e8).second == doctest::Approx(c.mu * p.l).epsilon(1e-6));
}
