#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "knads/geometry.hpp"
#include "knads/operators.hpp"

namespace knads::cli {

struct RunConfig {
    std::string command;
    BlackHoleParams params;
    ModeContext ctx;

    double lambda = 1.0;                  // radial separation constant
    double lo = -4.5, hi = 4.5;           // eigenvalue window
    double omega_lo = -2.0, omega_hi = 2.0, omega_step = 0.05;
    long jmax = 3;
    std::optional<double> period;         // scan: periodicity report
    double r0 = 0.0;                      // 0 means r₊ + l
    double x_cut = -1e-4;
    double beta = 0.0;
    bool oracle = false;
    int oracle_cells = 4000;
    std::vector<double> r_values;         // tortoise sample points
    int threads = 1;

    std::string out;                      // empty means stdout
    std::string format = "csv";           // csv | json
};

nlohmann::json to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

// Exit codes: 0 success, 2 validation error, 3 solver failure.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

int cmd_horizons(const RunConfig& cfg, std::ostream& out);
int cmd_extremal(const RunConfig& cfg, std::ostream& out);
int cmd_classify(const RunConfig& cfg, std::ostream& out);
int cmd_angular(const RunConfig& cfg, std::ostream& out);
int cmd_radial(const RunConfig& cfg, std::ostream& out);
int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& summary);
int cmd_tortoise(const RunConfig& cfg, std::ostream& out);

// 17 significant digits.
std::string fmt(double v);

}  // namespace knads::cli
