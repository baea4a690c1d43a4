#pragma once

#include <string>
#include <vector>

#include "knads/geometry.hpp"
#include "knads/operators.hpp"

namespace knads {

inline constexpr int kFixturesVersion = 1;

struct FixtureCase {
    std::string name;
    std::string kind;  // "angular" or "radial"
    BlackHoleParams params;
    ModeContext ctx;
    double lambda = 0.0;  // radial only
    double r0 = 0.0;      // radial only; 0 means r₊ + l
    double lo = -4.5, hi = 4.5;
    int cells = 4000;
    std::vector<double> eigenvalues;  // filled by the generator
    std::string scheme;
};

// The draws stored in the fixtures file.
std::vector<FixtureCase> standard_fixture_cases();

// Runs the oracle for each case.
void fill_oracle(std::vector<FixtureCase>& cases);

void write_fixtures(const std::string& path, const std::vector<FixtureCase>& cases);
std::vector<FixtureCase> read_fixtures(const std::string& path);

// KNADS_FIXTURES when set, otherwise fallback.
std::string fixtures_path(const std::string& fallback);

}  // namespace knads
