#include "knads/classify.hpp"

#include <cmath>

#include "knads/errors.hpp"
#include "knads/tortoise.hpp"

namespace knads {

namespace {
constexpr double kTol = 1e-12;
}

const char* to_string(Endpoint e) {
    switch (e) {
        case Endpoint::Theta0: return "theta=0";
        case Endpoint::ThetaPi: return "theta=pi";
        case Endpoint::Horizon: return "r=horizon";
        case Endpoint::Infinity: return "r=infinity";
    }
    return "?";
}

const char* to_string(Verdict v) {
    return v == Verdict::LimitPoint ? "LimitPoint" : "LimitCircle";
}

double exponent_theta0(double d, double k, double b) { return k - d * (1.0 - b); }
double exponent_thetapi(double d, double k, double b) { return k + d * (1.0 + b); }

Verdict verdict_from_exponent(double s) {
    return std::abs(s) >= 0.5 - kTol ? Verdict::LimitPoint : Verdict::LimitCircle;
}

AngularClass classify_angular(double d, double k, double b) {
    const bool gauged = b != 0.0;
    AngularClass out{};
    double s0 = exponent_theta0(d, k, b), sp = exponent_thetapi(d, k, b);
    out.at0 = {Endpoint::Theta0, s0, verdict_from_exponent(s0), gauged ? "condirac" : "condt0"};
    out.atpi = {Endpoint::ThetaPi, sp, verdict_from_exponent(sp), gauged ? "condirac" : "condtpi"};
    out.self_adjoint =
        out.at0.verdict == Verdict::LimitPoint && out.atpi.verdict == Verdict::LimitPoint;
    out.aggregate_code = gauged ? "condirac" : (std::abs(d) <= 0.5 ? "condmin" : "condmax");
    return out;
}

AngularClass classify_angular(const BlackHoleParams& p, const ModeContext& ctx) {
    validate(ctx);
    return classify_angular(monopole_d(p, ctx), ctx.k, ctx.gauge_b);
}

bool condt0_allows(long n, double d) { return n <= d - 1.0 + kTol || n >= d - kTol; }
bool condtpi_allows(long n, double d) { return n >= -d - kTol || n <= -d - 1.0 + kTol; }

bool appendix_a_allows(long n, double d) {
    const double ad = std::abs(d);
    const double x = static_cast<double>(n);
    if (ad <= 0.5) return x <= -1.0 - ad + kTol || x >= ad - kTol;
    return x <= -1.0 - ad + kTol || (x >= -ad - kTol && x <= -1.0 + ad + kTol) || x >= ad - kTol;
}

bool condirac_allows(long n, double d) {
    const double x = static_cast<double>(n);
    return x <= -1.0 - 2.0 * d + kTol || x >= -2.0 * d - kTol;
}

QuantizationReport quantization_check(double d) {
    QuantizationReport q{d, std::abs(d - std::round(d)) <= kTol, {}};
    if (!q.integer) {
        long f = static_cast<long>(std::floor(std::abs(d)));
        q.exceptional_n = {-1 - f, f};
    }
    return q;
}

QuantizationReport quantization_check(const BlackHoleParams& p, double e) {
    if (!(p.xi() > 0.0)) throw Error(ErrorCode::InvalidParams, "Xi must be positive");
    return quantization_check(p.q_m * e / p.xi());
}

EndpointClass classify_radial_infinity(double mu, double l) {
    if (!(mu > 0.0) || !(l > 0.0))
        throw Error(ErrorCode::InvalidParams, "need mu > 0 and l > 0");
    double s = mu * l;
    return {Endpoint::Infinity, s, s >= 0.5 - kTol ? Verdict::LimitPoint : Verdict::LimitCircle,
            "thm3"};
}

HorizonClass classify_radial_horizon(const BlackHoleParams& p, const ModeContext& ctx,
                                     double lambda) {
    HorizonData hz = find_horizons(p);
    TortoiseMap T(p, hz);
    const double php = phi_plus(p, hz, ctx);
    double sup = 0.0;
    for (int i = 0; i <= 300; ++i) {
        double y = std::pow(10.0, 3.0 * i / 300.0);
        double dr = T.dr_of_y(y);
        Sym2 V = radial_potential_near(p, hz, ctx, lambda, dr);
        double f = std::sqrt((V.a11 - php) * (V.a11 - php) + 2.0 * V.a12 * V.a12 +
                             (V.a22 - php) * (V.a22 - php));
        sup = std::max(sup, f);
    }
    return {{Endpoint::Horizon, 0.0, Verdict::LimitPoint, "hamilton-tortoise"}, sup};
}

SelfAdjointnessReport sa_report(const BlackHoleParams& p, const ModeContext& ctx, long n_lo,
                                long n_hi) {
    validate(p);
    validate(ctx);
    SelfAdjointnessReport rep{};
    const double d = monopole_d(p, ctx);
    rep.angular = classify_angular(d, ctx.k, ctx.gauge_b);
    rep.quantization = quantization_check(d);
    rep.horizon = classify_radial_horizon(p, ctx).cls;
    if (ctx.mu > 0.0) {
        rep.infinity = classify_radial_infinity(ctx.mu, p.l);
    } else {
        rep.infinity = {Endpoint::Infinity, 0.0, Verdict::LimitCircle, "thm3"};
    }
    for (long n = n_lo; n <= n_hi; ++n) {
        auto c = classify_angular(d, n + 0.5, ctx.gauge_b);
        if (!c.self_adjoint) rep.failing_n.push_back(n);
    }
    rep.codes = {rep.angular.at0.rationale, rep.angular.atpi.rationale, rep.angular.aggregate_code,
                 rep.horizon.rationale, rep.infinity.rationale};
    rep.essentially_self_adjoint = rep.angular.self_adjoint &&
                                   rep.horizon.verdict == Verdict::LimitPoint &&
                                   rep.infinity.verdict == Verdict::LimitPoint;
    return rep;
}

}  // namespace knads
