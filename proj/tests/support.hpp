#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "knads/fixtures.hpp"
#include "knads/geometry.hpp"
#include "knads/operators.hpp"

namespace knads::testing {

// Small deterministic generator for parameter draws.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

    // k = n + 1/2 with n in [lo, hi].
    double half_integer(long lo, long hi) { return integer(lo, hi) + 0.5; }

    BlackHoleParams background() {
        BlackHoleParams p;
        p.l = uniform(0.5, 3.0);
        p.a = uniform(0.0, 0.9) * p.l;
        p.q_e = uniform(-0.5, 0.5);
        p.q_m = uniform(-0.5, 0.5);
        return p;
    }

    // Strictly above the extremal mass.
    BlackHoleParams nonextremal() {
        BlackHoleParams p = background();
        double me = extremal_mass(p.a, p.z2(), p.l);
        p.m = std::max(me, 0.05) * uniform(1.05, 3.0);
        return p;
    }

    // Angular draw with both endpoints limit point: integer d and any half-integer k,
    // or generic d with the exponents kept away from the limit-circle window.
    void angular_lp(BlackHoleParams& p, ModeContext& c) {
        p = background();
        p.m = 1.0;
        c.mu = uniform(0.0, 2.0);
        c.omega = uniform(-2.0, 2.0);
        c.gauge_b = 0.0;
        for (;;) {
            c.e = uniform(-2.0, 2.0);
            c.k = half_integer(-3, 2);
            double d = monopole_d(p, c);
            if (std::abs(c.k - d) >= 0.5 && std::abs(c.k + d) >= 0.5) return;
        }
    }

private:
    std::mt19937_64 rng_;
};

inline std::string fixture_file() {
#ifdef KNADS_FIXTURE_OUT
    return fixtures_path(KNADS_FIXTURE_OUT);
#else
    return fixtures_path("fixtures/oracle.json");
#endif
}

}  // namespace knads::testing
