#pragma once

#include <string>
#include <vector>

#include "knads/angular_solver.hpp"
#include "knads/geometry.hpp"
#include "knads/operators.hpp"
#include "knads/radial_solver.hpp"

namespace knads {

struct ScanRow {
    double omega = 0.0;
    long j = 0;
    double lambda = 0.0;
    double phi_plus = 0.0;
    double slope = 0.0;            // horizon phase slope, → ω − φ₊
    double amplitude_ratio = 0.0;  // horizon-side min |X| / |X(r₀)|
    double decay_exponent = 0.0;   // infinity-side d log|X| / d log r
    std::string verdict_code;      // NonNormalizable | Levinson | Candidate | Injected
};

struct ScanOptions {
    long jmax = 3;                 // labels 1..jmax and −jmax..−1
    int threads = 1;
    double threshold = 1e-3;       // horizon amplitude below this flags a candidate
    double horizon_Y = 1e3;
    AngularOptions angular;
    RadialOptions radial;
};

struct ScanResult {
    BlackHoleParams params;
    ModeContext ctx;
    std::vector<double> omega_grid;
    std::vector<ScanRow> rows;     // ordered by grid index, then j
    double min_amplitude = 0.0;
    double threshold = 1e-3;
    long lipschitz_violations = 0; // curve steps with |Δλ| > a·Δω + 1e-8
    long segments = 1;             // continuous pieces after jump splitting
    std::string verdict;           // NoBoundStateFound | BoundStateCandidate
};

ScanResult coupled_scan(const BlackHoleParams& p, const ModeContext& ctx,
                        const std::vector<double>& omega_grid, const ScanOptions& opt = {});

std::vector<double> omega_range(double lo, double hi, double step);

// Recomputes min_amplitude and verdict from the rows.
void refresh_verdict(ScanResult& scan);

// Test plumbing: zeroes the amplitude of the row nearest to (omega, j).
void inject_fake_bound_state(ScanResult& scan, double omega, long j);

struct PeriodicityReport {
    double period = 0.0;
    std::string verdict;  // NoNormalizablePeriodicMode | Inconclusive(RangeMiss) | PeriodicCandidate
    std::vector<double> candidates;  // 2πn/T inside the scanned range
    std::vector<double> rejected;
    std::vector<double> flagged;
};

PeriodicityReport periodicity_verdict(const ScanResult& scan, double period);

}  // namespace knads
