#include <doctest.h>

#include <cmath>
#include <map>

#include "knads/errors.hpp"
#include "knads/modescan.hpp"
#include "support.hpp"

using namespace knads;

namespace {

BlackHoleParams scan_background() {
    BlackHoleParams p;
    p.a = 0.2;
    p.q_e = 0.1;
    return p;
}

ModeContext scan_mode() {
    ModeContext c;
    c.e = 0.1;
    return c;
}

const ScanResult& reference_scan() {
    static const ScanResult s = coupled_scan(scan_background(), scan_mode(), omega_range(-2, 2, 0.05));
    return s;
}

}  // namespace

TEST_CASE("reference scan has no bound state") {
    const ScanResult& s = reference_scan();
    CHECK(s.omega_grid.size() == 81);
    CHECK(s.rows.size() == 81 * 6);
    CHECK(s.verdict == "NoBoundStateFound");
    CHECK(s.min_amplitude > s.threshold);
    CHECK(s.lipschitz_violations == 0);
    for (const auto& r : s.rows) {
        CHECK(r.verdict_code != "Candidate");
        CHECK(r.decay_exponent < 0.0);
    }
}

TEST_CASE("halving the frequency step keeps the verdict") {
    const ScanResult& s = reference_scan();
    ScanResult fine = coupled_scan(scan_background(), scan_mode(), omega_range(-2, 2, 0.025));
    CHECK(fine.verdict == s.verdict);
    CHECK(fine.min_amplitude <= s.min_amplitude + 1e-12);
    CHECK(std::abs(fine.min_amplitude - s.min_amplitude) < 0.05 * s.min_amplitude);
    // Shared grid points reproduce the coarse rows.
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        const ScanRow& a = s.rows[i];
        std::size_t gi = i / 6, ji = i % 6;
        const ScanRow& b = fine.rows[2 * gi * 6 + ji];
        CHECK(a.j == b.j);
        CHECK(a.lambda == doctest::Approx(b.lambda).epsilon(1e-12));
    }
}

TEST_CASE("curves and labels") {
    BlackHoleParams p;
    ModeContext c = scan_mode();
    ScanOptions opt;
    opt.jmax = 2;
    ScanResult flat = coupled_scan(p, c, omega_range(-1, 1, 0.25), opt);
    std::map<long, double> first;
    for (const auto& r : flat.rows) {
        auto [it, fresh] = first.emplace(r.j, r.lambda);
        if (!fresh) CHECK(r.lambda == doctest::Approx(it->second).epsilon(1e-9));
    }
    for (const auto& [j, lam] : first) CHECK(lam == doctest::Approx(double(j)).epsilon(1e-7));

    const ScanResult& s = reference_scan();
    for (std::size_t i = 0; i + 1 < s.omega_grid.size(); ++i) {
        double dw = s.omega_grid[i + 1] - s.omega_grid[i];
        for (std::size_t ji = 0; ji < 6; ++ji) {
            const ScanRow& a = s.rows[i * 6 + ji];
            const ScanRow& b = s.rows[(i + 1) * 6 + ji];
            REQUIRE(a.j == b.j);
            CHECK(std::abs(a.lambda - b.lambda) <= 0.2 * dw + 1e-8);
        }
    }
    // Within one frequency, eigenvalues increase with the label.
    for (std::size_t i = 0; i < s.omega_grid.size(); ++i)
        for (std::size_t ji = 0; ji + 1 < 6; ++ji)
            CHECK(s.rows[i * 6 + ji].lambda < s.rows[i * 6 + ji + 1].lambda);
}

TEST_CASE("jmax only adds rows") {
    ScanOptions two;
    two.jmax = 2;
    ScanResult a = coupled_scan(scan_background(), scan_mode(), {-0.5, 0.5}, two);
    ScanResult b = coupled_scan(scan_background(), scan_mode(), {-0.5, 0.5});
    CHECK(a.rows.size() == 8);
    CHECK(b.rows.size() == 12);
    for (const auto& ra : a.rows) {
        bool found = false;
        for (const auto& rb : b.rows)
            if (rb.omega == ra.omega && rb.j == ra.j) {
                found = true;
                CHECK(rb.lambda == ra.lambda);
                CHECK(rb.amplitude_ratio == ra.amplitude_ratio);
            }
        CHECK(found);
    }
    CHECK(b.min_amplitude <= a.min_amplitude);
}

TEST_CASE("periodicity verdicts") {
    const ScanResult& s = reference_scan();
    PeriodicityReport none = periodicity_verdict(s, 1.0);
    CHECK(none.verdict == "NoNormalizablePeriodicMode");
    CHECK(none.candidates.size() == 1);  // only ω = 0 lies in [−2, 2]
    CHECK(none.flagged.empty());

    PeriodicityReport more = periodicity_verdict(s, 2 * M_PI);
    CHECK(more.candidates.size() == 5);
    CHECK(more.verdict == "NoNormalizablePeriodicMode");

    ScanResult off = coupled_scan(scan_background(), scan_mode(), omega_range(0.5, 2, 0.5));
    CHECK(periodicity_verdict(off, 1.0).verdict == "Inconclusive(RangeMiss)");

    ScanResult fake = s;
    inject_fake_bound_state(fake, 1.0, 2);
    CHECK(fake.verdict == "BoundStateCandidate");
    CHECK(fake.min_amplitude == 0.0);
    PeriodicityReport hit = periodicity_verdict(fake, 2 * M_PI);
    CHECK(hit.verdict == "PeriodicCandidate");
    REQUIRE(hit.flagged.size() == 1);
    CHECK(hit.flagged[0] == doctest::Approx(1.0));
    CHECK(periodicity_verdict(fake, 1.0).verdict == "NoNormalizablePeriodicMode");
}

TEST_CASE("scan preconditions") {
    BlackHoleParams e = scan_background();
    e.m = extremal_mass(e.a, e.z2(), e.l);
    auto code_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& ex) {
            return ex.code();
        }
        return ErrorCode::InvalidParams;
    };
    CHECK(code_of([&] { coupled_scan(e, scan_mode(), {0.0}); }) == ErrorCode::ExtremalUnsupported);
    BlackHoleParams mono = scan_background();
    mono.q_m = 0.5;
    ModeContext c = scan_mode();
    c.e = 0.5;
    CHECK(code_of([&] { coupled_scan(mono, c, {0.0}); }) == ErrorCode::NotSelfAdjoint);
    ModeContext light = scan_mode();
    light.mu = 0.3;
    CHECK(code_of([&] { coupled_scan(scan_background(), light, {0.0}); }) ==
          ErrorCode::NotLimitPoint);
}

TEST_CASE("threaded scan matches the serial one") {
    ScanOptions par;
    par.threads = 2;
    auto grid = omega_range(-1, 1, 0.25);
    ScanResult a = coupled_scan(scan_background(), scan_mode(), grid);
    ScanResult b = coupled_scan(scan_background(), scan_mode(), grid, par);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].lambda == b.rows[i].lambda);
        CHECK(a.rows[i].amplitude_ratio == b.rows[i].amplitude_ratio);
        CHECK(a.rows[i].verdict_code == b.rows[i].verdict_code);
    }
}
