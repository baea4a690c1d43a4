#include "knads/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "knads/angular_solver.hpp"
#include "knads/classify.hpp"
#include "knads/errors.hpp"
#include "knads/fixtures.hpp"
#include "knads/modescan.hpp"
#include "knads/oracle.hpp"
#include "knads/radial_solver.hpp"
#include "knads/tortoise.hpp"

namespace knads::cli {

using nlohmann::json;

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

// Column-ordered table rendered as CSV or as a JSON array of objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    void add(std::vector<json> row) { rows.push_back(std::move(row)); }

    void write(std::ostream& out, const std::string& format) const {
        if (format == "json") {
            json arr = json::array();
            for (const auto& r : rows) {
                json o = json::object();
                for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
                arr.push_back(o);
            }
            out << arr.dump(2) << "\n";
            return;
        }
        for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
        out << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) out << ",";
                const json& c = r[i];
                if (c.is_number_float()) out << fmt(c.get<double>());
                else if (c.is_string()) out << c.get<std::string>();
                else out << c.dump();
            }
            out << "\n";
        }
    }
};

Table key_values(const json& obj) {
    Table t;
    t.columns = {"key", "value"};
    for (auto it = obj.begin(); it != obj.end(); ++it) t.add({it.key(), it.value()});
    return t;
}

json endpoint_json(const EndpointClass& e) {
    return {{"endpoint", to_string(e.endpoint)},
            {"exponent", e.exponent},
            {"verdict", to_string(e.verdict)},
            {"rationale", e.rationale}};
}

void check_format(const RunConfig& cfg) {
    if (cfg.format != "csv" && cfg.format != "json")
        throw Error(ErrorCode::InvalidParams, "format must be csv or json");
}

}  // namespace

json to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["m"] = c.params.m;
    j["a"] = c.params.a;
    j["q_e"] = c.params.q_e;
    j["q_m"] = c.params.q_m;
    j["l"] = c.params.l;
    j["mu"] = c.ctx.mu;
    j["e"] = c.ctx.e;
    j["k"] = c.ctx.k;
    j["omega"] = c.ctx.omega;
    j["gauge_b"] = c.ctx.gauge_b;
    j["lambda"] = c.lambda;
    j["window"] = {c.lo, c.hi};
    j["omega_grid"] = {{"lo", c.omega_lo}, {"hi", c.omega_hi}, {"step", c.omega_step}};
    j["jmax"] = c.jmax;
    j["period"] = c.period ? json(*c.period) : json(nullptr);
    j["r0"] = c.r0;
    j["x_cut"] = c.x_cut;
    j["beta"] = c.beta;
    j["oracle"] = c.oracle;
    j["oracle_cells"] = c.oracle_cells;
    j["r_values"] = c.r_values;
    j["threads"] = c.threads;
    j["out"] = c.out;
    j["format"] = c.format;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    auto get = [&](const char* key, auto& dst) {
        if (j.contains(key) && !j.at(key).is_null()) j.at(key).get_to(dst);
    };
    try {
        get("command", c.command);
        get("m", c.params.m);
        get("a", c.params.a);
        get("q_e", c.params.q_e);
        get("q_m", c.params.q_m);
        get("l", c.params.l);
        get("mu", c.ctx.mu);
        get("e", c.ctx.e);
        get("k", c.ctx.k);
        get("omega", c.ctx.omega);
        get("gauge_b", c.ctx.gauge_b);
        get("lambda", c.lambda);
        if (j.contains("window")) {
            c.lo = j.at("window").at(0);
            c.hi = j.at("window").at(1);
        }
        if (j.contains("omega_grid")) {
            const auto& g = j.at("omega_grid");
            if (g.contains("lo")) c.omega_lo = g.at("lo");
            if (g.contains("hi")) c.omega_hi = g.at("hi");
            if (g.contains("step")) c.omega_step = g.at("step");
        }
        get("jmax", c.jmax);
        if (j.contains("period") && !j.at("period").is_null()) c.period = j.at("period").get<double>();
        get("r0", c.r0);
        get("x_cut", c.x_cut);
        get("beta", c.beta);
        get("oracle", c.oracle);
        get("oracle_cells", c.oracle_cells);
        get("r_values", c.r_values);
        get("threads", c.threads);
        get("out", c.out);
        get("format", c.format);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidParams, std::string("config: ") + e.what());
    }
    return c;
}

int cmd_horizons(const RunConfig& cfg, std::ostream& out) {
    validate(cfg.params);
    HorizonData hz = find_horizons(cfg.params);
    Komar k = komar(cfg.params);
    json r;
    r["r_plus"] = hz.r_plus;
    r["r_minus"] = hz.r_minus ? json(*hz.r_minus) : json(nullptr);
    r["extremal"] = hz.extremal;
    r["residual"] = hz.residual;
    r["real_roots"] = hz.all_real_roots.size();
    r["m_ext"] = extremal_mass(cfg.params.a, cfg.params.z2(), cfg.params.l);
    r["surface_gravity"] = surface_gravity(cfg.params, hz);
    r["komar_M"] = k.M;
    r["komar_J"] = k.J;
    r["komar_Q_e"] = k.Q_e;
    r["komar_Q_m"] = k.Q_m;
    if (cfg.format == "json") {
        r["real_roots"] = hz.all_real_roots;
        out << r.dump(2) << "\n";
    } else {
        key_values(r).write(out, "csv");
    }
    return 0;
}

int cmd_extremal(const RunConfig& cfg, std::ostream& out) {
    validate(cfg.params);
    double me = extremal_mass(cfg.params.a, cfg.params.z2(), cfg.params.l);
    json r;
    r["m_ext"] = me;
    r["m"] = cfg.params.m;
    r["relative_offset"] = (cfg.params.m - me) / me;
    r["nonextremal"] = is_nonextremal(cfg.params);
    if (cfg.format == "json") out << r.dump(2) << "\n";
    else key_values(r).write(out, "csv");
    return 0;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    validate(cfg.params);
    validate(cfg.ctx);
    SelfAdjointnessReport rep = sa_report(cfg.params, cfg.ctx);
    json r;
    r["d"] = rep.quantization.d;
    r["gauge_b"] = cfg.ctx.gauge_b;
    r["theta0"] = endpoint_json(rep.angular.at0);
    r["thetapi"] = endpoint_json(rep.angular.atpi);
    r["horizon"] = endpoint_json(rep.horizon);
    r["infinity"] = endpoint_json(rep.infinity);
    r["angular_code"] = rep.angular.aggregate_code;
    r["angular_self_adjoint"] = rep.angular.self_adjoint;
    r["essentially_self_adjoint"] = rep.essentially_self_adjoint;
    r["codes"] = rep.codes;
    r["failing_n"] = rep.failing_n;
    r["d_integer"] = rep.quantization.integer;
    r["exceptional_n"] = rep.quantization.exceptional_n;
    if (cfg.format == "json") {
        out << r.dump(2) << "\n";
        return 0;
    }
    Table t;
    t.columns = {"key", "value"};
    auto join = [](const json& arr) {
        std::string s;
        for (const auto& v : arr) s += (s.empty() ? "" : ";") + (v.is_string() ? v.get<std::string>() : v.dump());
        return s;
    };
    t.add({"d", rep.quantization.d});
    t.add({"gauge_b", cfg.ctx.gauge_b});
    for (const char* ep : {"theta0", "thetapi", "horizon", "infinity"}) {
        t.add({std::string(ep) + "_exponent", r[ep]["exponent"]});
        t.add({std::string(ep) + "_verdict", r[ep]["verdict"]});
        t.add({std::string(ep) + "_rationale", r[ep]["rationale"]});
    }
    t.add({"angular_code", rep.angular.aggregate_code});
    t.add({"angular_self_adjoint", rep.angular.self_adjoint});
    t.add({"essentially_self_adjoint", rep.essentially_self_adjoint});
    t.add({"failing_n", join(r["failing_n"])});
    t.add({"d_integer", rep.quantization.integer});
    t.add({"exceptional_n", join(r["exceptional_n"])});
    t.write(out, "csv");
    return 0;
}

int cmd_angular(const RunConfig& cfg, std::ostream& out) {
    validate(cfg.params);
    validate(cfg.ctx);
    SpectrumWindow w = angular_eigenvalues(cfg.params, cfg.ctx, cfg.lo, cfg.hi);
    Table t;
    t.columns = {"index", "j", "winding", "lambda", "residual"};
    std::vector<double> oracle;
    std::string source;
    if (cfg.oracle) {
        t.columns.insert(t.columns.end(), {"oracle", "oracle_delta", "oracle_source"});
        // Stored values are reused when the request matches a fixture exactly.
        try {
            for (const auto& f : read_fixtures(fixtures_path("fixtures/oracle.json"))) {
                const auto &p = f.params, &q = cfg.params;
                const auto &c = f.ctx, &d = cfg.ctx;
                if (f.kind == "angular" && p.m == q.m && p.a == q.a && p.q_e == q.q_e &&
                    p.q_m == q.q_m && p.l == q.l && c.mu == d.mu && c.e == d.e && c.k == d.k &&
                    c.omega == d.omega && c.gauge_b == d.gauge_b && f.lo == cfg.lo &&
                    f.hi == cfg.hi && f.cells == cfg.oracle_cells) {
                    oracle = f.eigenvalues;
                    source = "fixture";
                }
            }
        } catch (const Error&) {
        }
        if (source.empty()) {
            auto op = discretize_angular(cfg.params, cfg.ctx, cfg.oracle_cells);
            oracle = oracle_clean(oracle_eigenvalues(op, cfg.lo, cfg.hi));
            source = "live";
        }
    }
    for (std::size_t i = 0; i < w.eigenvalues.size(); ++i) {
        std::vector<json> row{static_cast<long>(i), w.labels[i], w.winding[i], w.eigenvalues[i],
                              w.residuals[i]};
        if (cfg.oracle) {
            double o = i < oracle.size() && oracle.size() == w.eigenvalues.size()
                           ? oracle[i]
                           : std::nan("");
            row.insert(row.end(), {o, o - w.eigenvalues[i], source});
        }
        t.add(std::move(row));
    }
    t.write(out, cfg.format);
    return 0;
}

int cmd_radial(const RunConfig& cfg, std::ostream& out) {
    validate(cfg.params);
    validate(cfg.ctx);
    RadialOptions opt;
    opt.r0 = cfg.r0;
    opt.x_cut = cfg.x_cut;
    opt.beta = cfg.beta;
    SpectrumWindow w = hinf_eigenvalues(cfg.params, cfg.ctx, cfg.lambda, cfg.lo, cfg.hi, opt);
    Table t;
    t.columns = {"section", "key", "value"};
    for (std::size_t i = 0; i < w.eigenvalues.size(); ++i)
        t.add({"hinf_eigenvalue", "winding_" + std::to_string(w.winding[i]), w.eigenvalues[i]});
    t.add({"hinf", "count", static_cast<long>(w.eigenvalues.size())});
    std::vector<RadialCertificate> certs{horizon_ac_certificate(cfg.params, cfg.ctx, cfg.lambda)};
    if (!find_horizons(cfg.params).extremal)
        certs.push_back(levinson_phi_plus(cfg.params, cfg.ctx, cfg.lambda));
    for (const auto& c : certs) {
        t.add({c.kind, "pass", c.pass});
        for (const auto& [k, v] : c.evidence) t.add({c.kind, k, v});
    }
    t.write(out, cfg.format);
    return 0;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& summary) {
    validate(cfg.params);
    validate(cfg.ctx);
    ScanOptions opt;
    opt.jmax = cfg.jmax;
    opt.threads = cfg.threads;
    opt.radial.r0 = cfg.r0;
    opt.radial.x_cut = cfg.x_cut;
    ScanResult s = coupled_scan(cfg.params, cfg.ctx,
                                omega_range(cfg.omega_lo, cfg.omega_hi, cfg.omega_step), opt);
    Table t;
    t.columns = {"omega", "j", "lambda", "phi_plus", "slope", "amplitude_ratio", "decay_exponent",
                 "verdict_code"};
    for (const auto& r : s.rows)
        t.add({r.omega, r.j, r.lambda, r.phi_plus, r.slope, r.amplitude_ratio, r.decay_exponent,
               r.verdict_code});
    t.write(out, cfg.format);
    summary << "verdict: " << s.verdict << "\n"
            << "min_amplitude: " << fmt(s.min_amplitude) << "\n"
            << "lipschitz_violations: " << s.lipschitz_violations << "\n";
    if (cfg.period) {
        PeriodicityReport pr = periodicity_verdict(s, *cfg.period);
        summary << "periodicity(T=" << fmt(*cfg.period) << "): " << pr.verdict << "\n";
    }
    return 0;
}

int cmd_tortoise(const RunConfig& cfg, std::ostream& out) {
    validate(cfg.params);
    HorizonData hz = find_horizons(cfg.params);
    TortoiseMap T(cfg.params, hz);
    std::vector<double> rs = cfg.r_values;
    if (rs.empty())
        for (double f : {1e-6, 1e-3, 1e-1, 1.0, 10.0, 100.0}) rs.push_back(hz.r_plus + f * cfg.params.l);
    Table t;
    t.columns = {"r", "y", "x"};
    for (double r : rs) {
        double y = T.y_of_r(r);
        t.add({r, y, -y});
    }
    t.write(out, cfg.format);
    return 0;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        check_format(cfg);
        std::ofstream file;
        std::ostream* dst = &out;
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) throw Error(ErrorCode::InvalidParams, "cannot open " + cfg.out);
            dst = &file;
        }
        const std::string& c = cfg.command;
        if (c == "horizons") return cmd_horizons(cfg, *dst);
        if (c == "extremal") return cmd_extremal(cfg, *dst);
        if (c == "classify") return cmd_classify(cfg, *dst);
        if (c == "angular") return cmd_angular(cfg, *dst);
        if (c == "radial") return cmd_radial(cfg, *dst);
        if (c == "scan") return cmd_scan(cfg, *dst, cfg.out.empty() ? err : out);
        if (c == "tortoise") return cmd_tortoise(cfg, *dst);
        throw Error(ErrorCode::InvalidParams, "unknown command '" + c + "'");
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_validation_error(e.code()) ? 2 : 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dirac spectra on charged rotating AdS black holes"};
    std::string command, config_path;
    std::optional<std::string> out_path, format;
    std::optional<int> threads, oracle_cells;
    std::optional<long> jmax;
    std::optional<double> m, a, q_e, q_m, l, mu, e, k, omega, gauge_b, lambda, lo, hi, omega_lo,
        omega_hi, omega_step, period, r0, x_cut, beta;
    std::vector<double> r_values;
    bool oracle = false, dump = false;

    app.add_option("command", command,
                   "horizons | extremal | classify | angular | radial | scan | tortoise")
        ->required();
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "csv or json");
    app.add_option("--threads", threads, "worker threads for scans");
    app.add_flag("--oracle", oracle, "add the finite-difference cross-check column");
    app.add_option("--oracle-cells", oracle_cells, "oracle cells per component");
    app.add_option("--gauge-b", gauge_b, "gauge parameter b");
    app.add_option("--m", m);
    app.add_option("--a", a);
    app.add_option("--q-e", q_e);
    app.add_option("--q-m", q_m);
    app.add_option("--l", l);
    app.add_option("--mu", mu);
    app.add_option("--e", e);
    app.add_option("--k", k);
    app.add_option("--omega", omega);
    app.add_option("--lambda", lambda);
    app.add_option("--lo", lo, "window lower end");
    app.add_option("--hi", hi, "window upper end");
    app.add_option("--omega-lo", omega_lo);
    app.add_option("--omega-hi", omega_hi);
    app.add_option("--omega-step", omega_step);
    app.add_option("--jmax", jmax);
    app.add_option("--period", period, "scan: report on period T");
    app.add_option("--r0", r0);
    app.add_option("--x-cut", x_cut);
    app.add_option("--beta", beta);
    app.add_option("--r", r_values, "tortoise: sample radii");
    app.add_flag("--dump-config", dump, "print the resolved configuration and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& pe) {
        std::ostringstream o, er;
        int rc = app.exit(pe, o, er);
        out << o.str();
        err << er.str();
        return rc == 0 ? 0 : 2;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw Error(ErrorCode::InvalidParams, "cannot read " + config_path);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::exception& ex) {
                throw Error(ErrorCode::InvalidParams, std::string("config: ") + ex.what());
            }
            cfg = config_from_json(j);
        }
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    }
    cfg.command = command;
    auto set = [](auto& dst, const auto& src) {
        if (src) dst = *src;
    };
    set(cfg.out, out_path);
    set(cfg.format, format);
    set(cfg.threads, threads);
    set(cfg.oracle_cells, oracle_cells);
    set(cfg.params.m, m);
    set(cfg.params.a, a);
    set(cfg.params.q_e, q_e);
    set(cfg.params.q_m, q_m);
    set(cfg.params.l, l);
    set(cfg.ctx.mu, mu);
    set(cfg.ctx.e, e);
    set(cfg.ctx.k, k);
    set(cfg.ctx.omega, omega);
    set(cfg.ctx.gauge_b, gauge_b);
    set(cfg.lambda, lambda);
    set(cfg.lo, lo);
    set(cfg.hi, hi);
    set(cfg.omega_lo, omega_lo);
    set(cfg.omega_hi, omega_hi);
    set(cfg.omega_step, omega_step);
    set(cfg.jmax, jmax);
    if (period) cfg.period = *period;
    set(cfg.r0, r0);
    set(cfg.x_cut, x_cut);
    set(cfg.beta, beta);
    if (!r_values.empty()) cfg.r_values = r_values;
    if (oracle) cfg.oracle = true;

    if (dump) {
        out << to_json(cfg).dump(2) << "\n";
        return 0;
    }
    return run(cfg, out, err);
}

}  // namespace knads::cli
