#include <doctest.h>

#include <cmath>

#include "knads/tortoise.hpp"
#include "support.hpp"

using namespace knads;

namespace {

void check_map(const BlackHoleParams& p) {
    HorizonData hz = find_horizons(p);
    TortoiseMap T(p, hz);
    double prev = INFINITY;
    for (double dr = 1e-9; dr < 1e5; dr *= 1.7) {
        double r = hz.r_plus + dr * std::max(hz.r_plus, p.l);
        double y = T.y_of_r(r);
        CHECK(y < prev);
        CHECK(y > 0.0);
        prev = y;
        CHECK(T.x_of_r(r) + y == 0.0);
        CHECK(std::abs(T.r_of_y(y) - r) <= 1e-9 * r);
    }
}

}  // namespace

TEST_CASE("tortoise map invariants") {
    BlackHoleParams p;
    check_map(p);
    p.a = 0.4;
    p.q_e = 0.3;
    p.l = 2.0;
    check_map(p);
    testing::Gen g(21);
    for (int i = 0; i < 10; ++i) check_map(g.nonextremal());
}

TEST_CASE("tortoise derivative") {
    BlackHoleParams p;
    p.a = 0.3;
    p.q_m = 0.2;
    HorizonData hz = find_horizons(p);
    TortoiseMap T(p, hz);
    for (double r : {hz.r_plus + 1e-3, hz.r_plus + 0.3, 2.0, 7.0, 40.0, 300.0}) {
        CAPTURE(r);
        double h = std::min(1e-5 * r, (r - hz.r_plus) / 1000.0);
        double d = (T.y_of_r(r + h) - T.y_of_r(r - h)) / (2 * h);
        CHECK(std::abs(d * delta_r(p, r) / (r * r + p.a * p.a) + 1.0) < 1e-6);
    }
    CHECK(tortoise_y(p, 3.0) == doctest::Approx(T.y_of_r(3.0)).epsilon(1e-14));
    CHECK(tortoise_x(p, 3.0) == -tortoise_y(p, 3.0));
}

TEST_CASE("tortoise asymptotics") {
    BlackHoleParams p;
    p.a = 0.2;
    p.q_e = 0.1;
    HorizonData hz = find_horizons(p);
    TortoiseMap T(p, hz);
    SUBCASE("far end") {
        double r = 1e6;
        CHECK(T.y_of_r(r) * r / (p.l * p.l) == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("logarithmic blow-up at a simple horizon") {
        double kappa = surface_gravity(p, hz);
        double y1 = T.y_of_dr(1e-8), y2 = T.y_of_dr(1e-9);
        CHECK((y2 - y1) / std::log(10.0) == doctest::Approx(1.0 / (2.0 * kappa)).epsilon(1e-6));
        CHECK(T.y_of_dr(1e-300) > T.y_of_dr(1e-200));
    }
    SUBCASE("power-law blow-up at a double horizon") {
        BlackHoleParams e = p;
        e.m = extremal_mass(e.a, e.z2(), e.l);
        HorizonData he = find_horizons(e);
        REQUIRE(he.extremal);
        TortoiseMap X(e, he);
        double c = X.y_of_dr(1e-6) * 1e-6, c2 = X.y_of_dr(1e-7) * 1e-7;
        CHECK(c2 == doctest::Approx(c).epsilon(1e-4));
        for (double y : {10.0, 1e3, 1e5}) CHECK(X.y_of_r(X.r_of_y(y)) == doctest::Approx(y).epsilon(1e-9));
    }
}
