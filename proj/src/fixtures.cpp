#include "knads/fixtures.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>

#include <json.hpp>

#include "knads/errors.hpp"
#include "knads/oracle.hpp"

namespace knads {

namespace {

FixtureCase angular_case(std::string name, double a, double l, double q_e, double q_m, double mu,
                         double e, double k, double omega) {
    FixtureCase c;
    c.name = std::move(name);
    c.kind = "angular";
    c.params.a = a;
    c.params.l = l;
    c.params.q_e = q_e;
    c.params.q_m = q_m;
    c.ctx.mu = mu;
    c.ctx.e = e;
    c.ctx.k = k;
    c.ctx.omega = omega;
    return c;
}

FixtureCase radial_case(std::string name, double m, double a, double l, double q_e, double mu,
                        double e, double k, double lambda, double lo, double hi) {
    FixtureCase c;
    c.name = std::move(name);
    c.kind = "radial";
    c.params.m = m;
    c.params.a = a;
    c.params.l = l;
    c.params.q_e = q_e;
    c.ctx.mu = mu;
    c.ctx.e = e;
    c.ctx.k = k;
    c.lambda = lambda;
    c.lo = lo;
    c.hi = hi;
    return c;
}

}  // namespace

std::vector<FixtureCase> standard_fixture_cases() {
    std::vector<FixtureCase> v;
    v.push_back(angular_case("sphere", 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.5, 0.0));
    v.push_back(angular_case("rot1", 0.5, 1.0, 0.0, 0.0, 1.0, 0.0, 0.5, 0.7));
    v.push_back(angular_case("rot2", 0.3, 1.0, 0.2, 0.7, 2.0, 1.0, 1.5, -0.4));
    v.push_back(angular_case("rot3", 0.6, 2.0, 0.1, -1.0, 0.5, 1.0, -2.5, 1.3));
    v.push_back(angular_case("rot4", 0.8, 1.5, 0.0, 0.0, 1.2, 0.3, -0.5, -1.1));
    v.push_back(angular_case("rot5", 0.25, 0.8, 0.3, 0.4, 0.7, -1.0, 2.5, 0.25));
    v.push_back(radial_case("hinf_schw", 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.5, 1.0, -5.0, 5.0));
    v.push_back(radial_case("hinf_rot", 1.0, 0.5, 2.0, 0.0, 0.8, 0.0, 0.5, 2.0, -5.0, 5.0));
    v.push_back(radial_case("hinf_heavy", 0.5, 0.2, 1.0, 0.1, 3.0, 0.2, -1.5, -0.5, -5.0, 5.0));
    return v;
}

void fill_oracle(std::vector<FixtureCase>& cases) {
    for (auto& c : cases) {
        DiscretizedOperator op =
            c.kind == "angular"
                ? discretize_angular(c.params, c.ctx, c.cells)
                : discretize_radial_confined(c.params, c.ctx, c.lambda,
                                             c.r0 > 0 ? c.r0
                                                      : find_horizons(c.params).r_plus + c.params.l,
                                             c.cells);
        c.scheme = op.scheme;
        c.eigenvalues = oracle_clean(oracle_eigenvalues(op, c.lo, c.hi));
    }
}

void write_fixtures(const std::string& path, const std::vector<FixtureCase>& cases) {
    nlohmann::json doc;
    doc["version"] = kFixturesVersion;
    doc["entries"] = nlohmann::json::array();
    for (const auto& c : cases) {
        nlohmann::json e;
        e["name"] = c.name;
        e["kind"] = c.kind;
        e["params"] = {{"m", c.params.m}, {"a", c.params.a}, {"q_e", c.params.q_e},
                       {"q_m", c.params.q_m}, {"l", c.params.l}};
        e["ctx"] = {{"mu", c.ctx.mu}, {"e", c.ctx.e}, {"k", c.ctx.k}, {"omega", c.ctx.omega},
                    {"gauge_b", c.ctx.gauge_b}};
        e["lambda"] = c.lambda;
        e["r0"] = c.r0;
        e["window"] = {c.lo, c.hi};
        e["grid"] = {{"cells", c.cells}, {"unknowns", 2 * c.cells}, {"scheme", c.scheme}};
        e["eigenvalues"] = c.eigenvalues;
        doc["entries"].push_back(e);
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidParams, "cannot write " + path);
    out << std::setprecision(17) << doc.dump(2) << "\n";
}

std::vector<FixtureCase> read_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidParams, "cannot read fixtures " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    if (doc.at("version").get<int>() != kFixturesVersion)
        throw Error(ErrorCode::InvalidParams, "fixtures version mismatch");
    std::vector<FixtureCase> v;
    for (const auto& e : doc.at("entries")) {
        FixtureCase c;
        c.name = e.at("name");
        c.kind = e.at("kind");
        const auto& p = e.at("params");
        c.params = {p.at("m"), p.at("a"), p.at("q_e"), p.at("q_m"), p.at("l")};
        const auto& x = e.at("ctx");
        c.ctx = {x.at("mu"), x.at("e"), x.at("k"), x.at("omega"), x.at("gauge_b")};
        c.lambda = e.at("lambda");
        c.r0 = e.at("r0");
        c.lo = e.at("window").at(0);
        c.hi = e.at("window").at(1);
        c.cells = e.at("grid").at("cells");
        c.scheme = e.at("grid").at("scheme");
        c.eigenvalues = e.at("eigenvalues").get<std::vector<double>>();
        v.push_back(std::move(c));
    }
    return v;
}

std::string fixtures_path(const std::string& fallback) {
    const char* env = std::getenv("KNADS_FIXTURES");
    return env && *env ? std::string(env) : fallback;
}

}  // namespace knads
