#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "knads/cli.hpp"
#include "knads/errors.hpp"

using namespace knads;

namespace {

struct Outcome {
    int rc;
    std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "knads");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    int rc = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {rc, out.str(), err.str()};
}

std::string value_of(const std::string& csv, const std::string& key) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + ",", 0) == 0) return line.substr(key.size() + 1);
    return {};
}

std::string temp_path(const std::string& name) {
    return std::string(KNADS_FIXTURE_OUT) + "." + name;
}

}  // namespace

TEST_CASE("horizons and classify") {
    Outcome h = invoke({"horizons", "--m", "1", "--l", "1"});
    CHECK(h.rc == 0);
    CHECK(std::stod(value_of(h.out, "r_plus")) == doctest::Approx(1.0).epsilon(1e-12));

    Outcome c = invoke({"classify", "--q-m", "0.5", "--e", "0.5"});
    CHECK(c.rc == 0);
    CHECK(value_of(c.out, "failing_n") == "-1;0");
    CHECK(value_of(c.out, "essentially_self_adjoint") == "false");
}

TEST_CASE("exit codes") {
    CHECK(invoke({"horizons", "--l", "-1"}).rc == 2);
    Outcome k = invoke({"angular", "--k", "1"});
    CHECK(k.rc == 2);
    CHECK(k.err.rfind("error: InvalidParams", 0) == 0);
    CHECK(invoke({"radial", "--mu", "0"}).rc == 2);
    CHECK(invoke({"frobnicate"}).rc == 2);
    CHECK(invoke({"horizons", "--format", "xml"}).rc == 2);
    CHECK(invoke({"horizons", "--bogus"}).rc == 2);

    CHECK(is_validation_error(ErrorCode::InvalidParams));
    CHECK(is_validation_error(ErrorCode::NotConfining));
    CHECK_FALSE(is_validation_error(ErrorCode::IntegratorStall));
    CHECK_FALSE(is_validation_error(ErrorCode::QuadratureFailure));
}

TEST_CASE("configuration round trip") {
    Outcome d = invoke({"angular", "--a", "0.3", "--e", "0.7", "--omega", "1.25", "--period", "3",
                        "--dump-config"});
    REQUIRE(d.rc == 0);
    auto j = nlohmann::json::parse(d.out);
    CHECK(j["a"] == 0.3);
    CHECK(j["period"] == 3.0);
    CHECK(cli::to_json(cli::config_from_json(j)) == j);

    std::string path = temp_path("config.json");
    {
        std::ofstream f(path);
        f << d.out;
    }
    Outcome direct = invoke({"angular", "--a", "0.3", "--e", "0.7", "--omega", "1.25"});
    Outcome via = invoke({"angular", "--config", path});
    CHECK(direct.rc == 0);
    CHECK(via.out == direct.out);
    // Flags override the file.
    Outcome over = invoke({"angular", "--config", path, "--dump-config", "--a", "0.1"});
    CHECK(nlohmann::json::parse(over.out)["a"] == 0.1);
    std::remove(path.c_str());

    CHECK(invoke({"angular", "--config", "/nonexistent/knads.json"}).rc == 2);
}

TEST_CASE("output formats") {
    Outcome a = invoke({"angular", "--a", "0.4", "--omega", "0.3"});
    Outcome b = invoke({"angular", "--a", "0.4", "--omega", "0.3"});
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("index,j,winding,lambda,residual\n", 0) == 0);

    Outcome js = invoke({"angular", "--a", "0.4", "--omega", "0.3", "--format", "json"});
    auto arr = nlohmann::json::parse(js.out);
    REQUIRE(arr.is_array());
    CHECK(arr.size() + 1 == static_cast<std::size_t>(std::count(a.out.begin(), a.out.end(), '\n')));

    Outcome o = invoke({"angular", "--oracle"});
    CHECK(o.rc == 0);
    CHECK(o.out.find("fixture") != std::string::npos);

    Outcome t = invoke({"tortoise", "--r", "2", "--r", "5"});
    CHECK(t.rc == 0);
    CHECK(t.out.rfind("r,y,x\n", 0) == 0);

    Outcome r = invoke({"radial"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("Hor_AC_L1,pass,true") != std::string::npos);
    CHECK(r.out.find("Levinson_phi_plus,pass,true") != std::string::npos);
}

TEST_CASE("scan summary") {
    Outcome s = invoke({"scan", "--a", "0.2", "--q-e", "0.1", "--e", "0.1", "--omega-lo", "-0.5",
                        "--omega-hi", "0.5", "--omega-step", "0.25", "--jmax", "1", "--period", "1"});
    CHECK(s.rc == 0);
    CHECK(s.out.rfind("omega,j,lambda,phi_plus,slope,amplitude_ratio,decay_exponent,verdict_code\n",
                      0) == 0);
    CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 1 + 5 * 2);
    CHECK(s.err.find("verdict: NoBoundStateFound") != std::string::npos);
    CHECK(s.err.find("periodicity(T=1): NoNormalizablePeriodicMode") != std::string::npos);

    std::string path = temp_path("scan.csv");
    Outcome f = invoke({"scan", "--a", "0.2", "--q-e", "0.1", "--e", "0.1", "--omega-lo", "0",
                        "--omega-hi", "0", "--jmax", "1", "--out", path});
    CHECK(f.rc == 0);
    CHECK(f.out.find("verdict: NoBoundStateFound") != std::string::npos);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("omega,", 0) == 0);
    std::remove(path.c_str());
}
