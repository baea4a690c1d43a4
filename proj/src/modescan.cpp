#include "knads/modescan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "knads/classify.hpp"
#include "knads/errors.hpp"

namespace knads {

namespace {

std::vector<long> label_list(long jmax) {
    std::vector<long> js;
    for (long j = -jmax; j <= jmax; ++j)
        if (j != 0) js.push_back(j);
    return js;
}

}  // namespace

std::vector<double> omega_range(double lo, double hi, double step) {
    if (!(step > 0) || !(hi >= lo)) throw Error(ErrorCode::InvalidParams, "bad omega range");
    long n = std::lround((hi - lo) / step);
    std::vector<double> g(n + 1);
    for (long i = 0; i <= n; ++i) g[i] = lo + step * i;
    return g;
}

ScanResult coupled_scan(const BlackHoleParams& p, const ModeContext& ctx,
                        const std::vector<double>& omega_grid, const ScanOptions& opt) {
    validate(p);
    validate(ctx);
    if (omega_grid.empty()) throw Error(ErrorCode::InvalidParams, "empty omega grid");
    if (opt.jmax < 1) throw Error(ErrorCode::InvalidParams, "jmax must be positive");
    RadialBackground bg(p, opt.radial.r0);
    if (bg.hz.extremal) throw Error(ErrorCode::ExtremalUnsupported, "scan needs a non-extremal hole");
    if (ctx.mu * p.l < 0.5)
        throw Error(ErrorCode::NotLimitPoint, "radial end at infinity is limit circle");
    auto sa = sa_report(p, ctx);
    if (!sa.essentially_self_adjoint)
        throw Error(ErrorCode::NotSelfAdjoint, "partial wave is not essentially self-adjoint");

    const std::vector<long> js = label_list(opt.jmax);
    const double phi = phi_plus(p, bg.hz, ctx);

    // ω = 0 eigenvalues seed the brackets; |λ_j(ω) − λ_j(0)| ≤ |a ω|.
    const long m0 = winding_reference(p, ctx, opt.angular);
    std::vector<double> seed(js.size());
    {
        ModeContext c0 = ctx;
        c0.omega = 0.0;
        for (std::size_t i = 0; i < js.size(); ++i) {
            long m = winding_from_label(js[i], m0);
            seed[i] = angular_eigenvalue_for_winding(p, c0, m, -0.5, 0.5, opt.angular);
        }
    }

    const std::size_t n_om = omega_grid.size();
    std::vector<ScanRow> rows(n_om * js.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex fail_mu;
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n_om) return;
            try {
                ModeContext c = ctx;
                c.omega = omega_grid[i];
                const double spread = std::abs(p.a * c.omega) + 1e-6;
                for (std::size_t q = 0; q < js.size(); ++q) {
                    ScanRow& row = rows[i * js.size() + q];
                    row.omega = c.omega;
                    row.j = js[q];
                    row.phi_plus = phi;
                    long m = winding_from_label(js[q], m0);
                    row.lambda = angular_eigenvalue_for_winding(
                        p, c, m, seed[q] - spread, seed[q] + spread, opt.angular);
                    TransportReport tr =
                        radial_transport(bg, c, row.lambda, c.omega, opt.horizon_Y, opt.radial);
                    row.slope = tr.slope;
                    row.amplitude_ratio = tr.amplitude_ratio;
                    row.decay_exponent = tr.decay_exponent;
                    if (tr.amplitude_ratio <= opt.threshold)
                        row.verdict_code = "Candidate";
                    else
                        row.verdict_code = tr.used_levinson ? "Levinson" : "NonNormalizable";
                }
            } catch (...) {
                std::lock_guard<std::mutex> lk(fail_mu);
                if (!failure) failure = std::current_exception();
                next = n_om;
                return;
            }
        }
    };
    int nt = std::max(1, std::min<int>(opt.threads, static_cast<int>(n_om)));
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    ScanResult res;
    res.params = p;
    res.ctx = ctx;
    res.omega_grid = omega_grid;
    res.rows = std::move(rows);
    res.threshold = opt.threshold;

    // Lipschitz gate along each curve; a violation splits the grid there.
    std::vector<bool> cut(n_om, false);
    for (std::size_t q = 0; q < js.size(); ++q) {
        for (std::size_t i = 1; i < n_om; ++i) {
            const auto& a = res.rows[(i - 1) * js.size() + q];
            const auto& b = res.rows[i * js.size() + q];
            double bound = std::abs(p.a) * std::abs(b.omega - a.omega) + 1e-8;
            if (std::abs(b.lambda - a.lambda) > bound) {
                ++res.lipschitz_violations;
                cut[i] = true;
            }
        }
    }
    res.segments = 1 + std::count(cut.begin(), cut.end(), true);
    refresh_verdict(res);
    return res;
}

void refresh_verdict(ScanResult& scan) {
    scan.min_amplitude = std::numeric_limits<double>::infinity();
    for (const auto& r : scan.rows) scan.min_amplitude = std::min(scan.min_amplitude, r.amplitude_ratio);
    scan.verdict =
        scan.min_amplitude > scan.threshold ? "NoBoundStateFound" : "BoundStateCandidate";
}

void inject_fake_bound_state(ScanResult& scan, double omega, long j) {
    ScanRow* best = nullptr;
    double dist = std::numeric_limits<double>::infinity();
    for (auto& r : scan.rows) {
        if (r.j != j) continue;
        double d = std::abs(r.omega - omega);
        if (d < dist) {
            dist = d;
            best = &r;
        }
    }
    if (!best) throw Error(ErrorCode::InvalidParams, "label not present in scan");
    best->amplitude_ratio = 0.0;
    best->verdict_code = "Injected";
    refresh_verdict(scan);
}

PeriodicityReport periodicity_verdict(const ScanResult& scan, double period) {
    PeriodicityReport rep;
    rep.period = period;
    if (!(period > 0) || scan.omega_grid.empty()) {
        rep.verdict = "Inconclusive(RangeMiss)";
        return rep;
    }
    const auto [lo_it, hi_it] = std::minmax_element(scan.omega_grid.begin(), scan.omega_grid.end());
    const double lo = *lo_it, hi = *hi_it;
    const double w = 2.0 * M_PI / period;
    for (long n = static_cast<long>(std::ceil(lo / w)); n * w <= hi; ++n) rep.candidates.push_back(n * w);
    if (rep.candidates.empty()) {
        rep.verdict = "Inconclusive(RangeMiss)";
        return rep;
    }
    for (double om : rep.candidates) {
        // Grid points bracketing the candidate frequency.
        double below = -std::numeric_limits<double>::infinity();
        double above = std::numeric_limits<double>::infinity();
        for (double g : scan.omega_grid) {
            if (g <= om) below = std::max(below, g);
            if (g >= om) above = std::min(above, g);
        }
        bool flagged = false;
        for (const auto& r : scan.rows)
            if ((r.omega == below || r.omega == above) && r.amplitude_ratio <= scan.threshold)
                flagged = true;
        (flagged ? rep.flagged : rep.rejected).push_back(om);
    }
    rep.verdict = rep.flagged.empty() ? "NoNormalizablePeriodicMode" : "PeriodicCandidate";
    return rep;
}

}  // namespace knads
