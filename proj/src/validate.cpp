#include "awt/validate.hpp"

#include <algorithm>
#include <cmath>

#include "awt/bounds.hpp"
#include "awt/cov.hpp"
#include "awt/dist.hpp"
#include "awt/mc.hpp"
#include "awt/quadrature.hpp"
#include "awt/specfun.hpp"
#include "awt/transform.hpp"

namespace awt {
namespace validate {

namespace {

// Shared tone bench: Morse(2,1), band-limited white noise to Nyquist, one
// probe at the tone's magnitude-ridge scale.
struct ToneBench {
    WaveletSpec spec = WaveletSpec::morse(2.0, 1.0);
    SpectralMeasure F = SpectralMeasure::white_bandlimited(100.0 * pi, 0.02);
    TimeScaleGrid grid;
    double f0 = 0.0;
    std::size_t probe_time = 256;
    double gamma_ss = 0.0;   // noise energy at the probe scale
    cplx clean_unit = 0.0;   // W_f at unit amplitude

    ToneBench() {
        double dt = 0.01;
        std::size_t n_t = 512;
        f0 = 41.0 / (n_t * dt);  // on-bin
        double s_ridge = 2.5 / (two_pi * f0);
        grid.t0 = 0.0;
        grid.dt = dt;
        grid.n_t = n_t;
        grid.scales = {s_ridge};
        auto g = discrete_gamma(F, spec, {{grid.time(probe_time), s_ridge}}, 0.0, dt,
                                n_t);
        gamma_ss = g.gamma(0, 0).real();
        auto W = awt_forward(tone_signal(f0, 1.0, 1.0 / dt, n_t), dt, spec,
                             grid.scales, 0.0);
        clean_unit = W.at(0, probe_time);
    }

    double amplitude_for_q(double q) const {
        return q > 0.0 ? std::sqrt(q * gamma_ss) / std::abs(clean_unit) : 0.0;
    }

    mc::Ensemble ensemble(double q, std::size_t n_paths, std::uint64_t seed,
                          int threads) const {
        double a = amplitude_for_q(q);
        std::vector<double> sig;
        if (a > 0.0) sig = tone_signal(f0, a, 1.0 / grid.dt, grid.n_t);
        return mc::run_ensemble(sig, F, spec, grid, {{0, probe_time}}, n_paths, seed,
                                threads);
    }
};

int circ_bin_dist(int a, int b, int bins) {
    int d = std::abs(a - b) % bins;
    return std::min(d, bins - d);
}

}  // namespace

PdfMagReport pdf_mag(const Config& cfg) {
    ToneBench bench;
    PdfMagReport rep;
    int idx = 0;
    for (double q_target : {0.0, 4.0, 25.0}) {
        auto ens = bench.ensemble(q_target, cfg.n_paths, cfg.seed + idx++, cfg.threads);
        double m = std::abs(ens.clean[0]);
        double sigma2 = 0.5 * bench.gamma_ss;
        auto pdf = [&](double r) { return dist::rice_pdf(r, m, sigma2); };
        mc::QuadratureCdf cdf(pdf, 0.0, m + 10.0 * std::sqrt(sigma2));
        ProbeKs row;
        row.q = std::norm(ens.clean[0]) / bench.gamma_ss;
        row.ks = mc::ks_statistic([&](double x) { return cdf(x); }, ens.magnitudes(0));
        row.line = mc::ks_line_99(cfg.n_paths);
        row.n = cfg.n_paths;
        rep.pass = rep.pass && row.ok();
        rep.rows.push_back(row);
    }
    return rep;
}

PdfPhaseReport pdf_phase(const Config& cfg) {
    ToneBench bench;
    PdfPhaseReport rep;

    auto null_ens = bench.ensemble(0.0, cfg.n_paths, cfg.seed + 10, cfg.threads);
    rep.ks_uniform =
        mc::ks_statistic([](double th) { return th / two_pi; }, null_ens.phases(0));
    rep.line = mc::ks_line_99(cfg.n_paths);
    rep.pass = rep.ks_uniform < rep.line;

    int idx = 0;
    for (double q_target : {2.0, 10.0}) {
        auto ens = bench.ensemble(q_target, cfg.n_paths, cfg.seed + 20 + idx++,
                                  cfg.threads);
        auto hist = mc::histogram_phase(ens.phases(0), 64);
        PhasePeak peak;
        peak.q = q_target;
        peak.bins = 64;
        peak.argmax_bin = static_cast<int>(
            std::max_element(hist.mass.begin(), hist.mass.end()) - hist.mass.begin());
        peak.expect_bin =
            static_cast<int>(phase_of(ens.clean[0]) / (two_pi / 64.0)) % 64;
        peak.circ_dist = circ_bin_dist(peak.argmax_bin, peak.expect_bin, 64);
        rep.pass = rep.pass && peak.circ_dist <= 2;
        rep.peaks.push_back(peak);
    }

    auto marginal = [](double th) { return dist::phase_marginal_pdf(th, 3.0, 1.2); };
    rep.norm_err = std::abs(periodic_trapezoid(marginal, 8192) - 1.0);
    rep.pass = rep.pass && rep.norm_err < 1e-10;
    return rep;
}

PdfJointReport pdf_joint() {
    PdfJointReport rep;

    Eigen::MatrixXcd g(2, 2);
    g << 1.0, cplx(0.5, 0.2), cplx(0.5, -0.2), 1.0;
    auto outer = [&](double r1) {
        auto inner = [&](double r2) { return dist::mag_joint_pdf_null_n2(r1, r2, g); };
        return gl_integrate(inner, linear_panels(0.0, 7.0, 48), 16);
    };
    rep.mag_norm = gl_integrate(outer, linear_panels(0.0, 7.0, 48), 16);
    rep.pass = rep.pass && rep.mag_norm_err() < 1e-6;

    // Laguerre series at x = 0.25, 60 terms.
    Eigen::MatrixXcd gl2(2, 2);
    gl2 << 1.0, 0.5, 0.5, 1.0;
    double r1 = 0.7, r2 = 1.3, series = 0.0, xk = 1.0;
    for (int k = 0; k <= 60; ++k) {
        series += xk * specfun::laguerre(k, r1 * r1) * specfun::laguerre(k, r2 * r2);
        xk *= 0.25;
    }
    rep.laguerre_series = 4.0 * r1 * r2 * std::exp(-(r1 * r1 + r2 * r2)) * series;
    rep.laguerre_closed = dist::mag_joint_pdf_null_n2(r1, r2, gl2);
    rep.pass = rep.pass && rep.laguerre_rel_err() < 1e-8;

    // J(M) against 4 pi^2 e^{-(M11+M22)} I0(2|M12|).
    Eigen::MatrixXcd m(2, 2);
    m << 0.8, cplx(0.3, -0.45), cplx(0.3, 0.45), 1.1;
    rep.j_numeric = std::exp(dist::log_angular_j(m));
    rep.j_closed = 4.0 * pi * pi * std::exp(-(m(0, 0).real() + m(1, 1).real())) *
                   specfun::bessel_i(0, 2.0 * std::abs(m(0, 1)), false);
    rep.pass = rep.pass && rep.j_rel_err() < 1e-8;

    // Null phase pair: normalization and difference-profile argmax.
    Eigen::MatrixXcd gp(2, 2);
    cplx g12 = 0.6 * std::exp(cplx(0.0, pi / 3.0));
    gp << 1.0, g12, std::conj(g12), 1.0;
    auto pouter = [&](double t1) {
        auto pinner = [&](double t2) {
            return dist::phase_joint_pdf_null_n2(t1, t2, gp);
        };
        return gl_integrate(pinner, linear_panels(0.0, two_pi, 16), 16);
    };
    rep.phase_norm = gl_integrate(pouter, linear_panels(0.0, two_pi, 16), 16);
    rep.pass = rep.pass && rep.phase_norm_err() < 1e-6;

    int n = 4096, best = 0;
    double best_p = -1.0;
    for (int i = 0; i < n; ++i) {
        double p = dist::phase_joint_pdf_null_n2(0.0, two_pi * i / n, gp);
        if (p > best_p) {
            best_p = p;
            best = i;
        }
    }
    int expect = static_cast<int>(std::round(std::arg(std::conj(g12)) / (two_pi / n)));
    expect = ((expect % n) + n) % n;
    rep.argmax_offset_steps = circ_bin_dist(best, expect, n);
    rep.pass = rep.pass && rep.argmax_offset_steps <= 1;
    return rep;
}

namespace {

// Bench for pairwise covariance checks: one scale, three times, correlation
// ratios near {0.5, 0.1}.
struct PairBench {
    WaveletSpec spec = WaveletSpec::morse(2.0, 1.0);
    SpectralMeasure F = SpectralMeasure::white_bandlimited(100.0 * pi, 0.02);
    TimeScaleGrid grid;
    std::vector<mc::Probe> probes;
    GammaMatrix gamma;

    PairBench() {
        grid.t0 = 0.0;
        grid.dt = 0.01;
        grid.n_t = 512;
        grid.scales = {0.1};
        probes = {{0, 250}, {0, 258}, {0, 265}};
        std::vector<TimeScalePoint> pts;
        for (auto& p : probes) pts.push_back({grid.time(p.time_index), 0.1});
        gamma = discrete_gamma(F, spec, pts, 0.0, grid.dt, grid.n_t);
    }

    Eigen::MatrixXcd pair_gamma(std::size_t a, std::size_t b) const {
        Eigen::MatrixXcd g(2, 2);
        g << gamma.gamma(a, a), gamma.gamma(a, b), gamma.gamma(b, a), gamma.gamma(b, b);
        return g;
    }
};

}  // namespace

CovMagReport cov_mag(const Config& cfg) {
    PairBench bench;
    CovMagReport rep;
    auto ens = mc::run_ensemble({}, bench.F, bench.spec, bench.grid, bench.probes,
                                cfg.n_paths, cfg.seed + 40, cfg.threads);
    auto mags0 = ens.magnitudes(0);
    double gll = bench.gamma.gamma(0, 0).real();

    auto mean_stat = mc::empirical_mean(mags0);
    ZRow mean_row{"mean_abs", cov::mean_abs_null(gll), mean_stat.value, mean_stat.se,
                  0.0};
    mean_row.z = (mean_stat.value - mean_row.analytic) / mean_stat.se;
    rep.rows.push_back(mean_row);

    std::vector<double> sq(mags0.size());
    for (std::size_t i = 0; i < mags0.size(); ++i) sq[i] = sqr(mags0[i] - mean_stat.value);
    auto var_stat = mc::empirical_mean(sq);
    ZRow var_row{"var_abs", cov::var_abs_null(gll), var_stat.value, var_stat.se, 0.0};
    var_row.z = (var_stat.value - var_row.analytic) / var_stat.se;
    rep.rows.push_back(var_row);

    for (std::size_t other : {std::size_t(1), std::size_t(2)}) {
        auto gp = bench.pair_gamma(0, other);
        double x = std::norm(gp(0, 1)) / (gp(0, 0).real() * gp(1, 1).real());
        auto corr_stat = mc::empirical_corr(mags0, ens.magnitudes(other));
        ZRow row{"corr_abs_x=" + std::to_string(x), cov::corr_magnitudes_null(gp),
                 corr_stat.value, corr_stat.se, 0.0};
        row.z = (corr_stat.value - row.analytic) / corr_stat.se;
        rep.rows.push_back(row);
    }
    for (auto& r : rep.rows) rep.pass = rep.pass && r.ok();

    // Small-x slope of the correlation, analytic route.
    Eigen::MatrixXcd gx(2, 2);
    gx << 1.0, std::sqrt(1e-4), std::sqrt(1e-4), 1.0;
    double slope = cov::corr_magnitudes_null(gx) / 1e-4;
    rep.slope_rel_err = std::abs(slope - cov::corr_magnitudes_small_x_slope()) /
                        cov::corr_magnitudes_small_x_slope();
    rep.pass = rep.pass && rep.slope_rel_err <= 0.01;
    return rep;
}

CovPhaseReport cov_phase(const Config& cfg) {
    PairBench bench;
    CovPhaseReport rep;
    auto ens = mc::run_ensemble({}, bench.F, bench.spec, bench.grid, bench.probes,
                                cfg.n_paths, cfg.seed + 50, cfg.threads);
    auto ph0 = ens.phases(0);
    for (std::size_t other : {std::size_t(1), std::size_t(2)}) {
        auto gp = bench.pair_gamma(0, other);
        auto closed = cov::circular_cov_phases_null(gp);
        auto emp = mc::empirical_circular_cov(ph0, ens.phases(other));
        ZRow row{"circ_cov_pair" + std::to_string(other), std::abs(closed.diff),
                 std::abs(emp.mean), emp.se, 0.0};
        row.z = std::abs(emp.mean - closed.diff) / emp.se;
        rep.rows.push_back(row);

        auto emp_sum = mc::empirical_circular_sum(ph0, ens.phases(other));
        ZRow sum_row{"circ_sum_pair" + std::to_string(other), 0.0,
                     std::abs(emp_sum.mean), emp_sum.se, 0.0};
        sum_row.z = std::abs(emp_sum.mean) / emp_sum.se;
        rep.rows.push_back(sum_row);
    }
    for (auto& r : rep.rows) rep.pass = rep.pass && r.ok();

    // Small-rho phase-covariance asymptotic against direct quadrature.
    double rho = 0.05;
    for (double v : {0.0, pi / 3.0, pi}) {
        Eigen::MatrixXcd g(2, 2);
        cplx g12 = rho * std::exp(cplx(0.0, v));
        g << 1.0, g12, std::conj(g12), 1.0;
        auto outer = [&](double t1) {
            auto inner = [&](double t2) {
                return (t1 - pi) * (t2 - pi) * dist::phase_joint_pdf_null_n2(t1, t2, g);
            };
            return gl_integrate(inner, linear_panels(0.0, two_pi, 32), 16);
        };
        double quad = gl_integrate(outer, linear_panels(0.0, two_pi, 32), 16);
        double asym = cov::phase_cov_asymptotic(g);
        double rel = std::abs(asym - quad) / std::abs(asym);
        rep.asym_rel_err.push_back(rel);
        rep.pass = rep.pass && rel <= 0.05;
    }
    return rep;
}

IndependenceReport independence(const Config& cfg, int reps) {
    WaveletSpec spec = WaveletSpec::morse(2.0, 1.0);
    auto F = SpectralMeasure::white_bandlimited(100.0 * pi, 0.02);
    TimeScaleGrid grid;
    grid.t0 = 0.0;
    grid.dt = 0.01;
    grid.n_t = 256;
    grid.scales = {0.07, 0.12};
    std::vector<mc::Probe> probes = {{0, 100}, {1, 150}};

    IndependenceReport rep;
    rep.reps = reps;
    for (int r = 0; r < reps; ++r) {
        auto ens = mc::run_ensemble({}, F, spec, grid, probes, cfg.n_paths,
                                    cfg.seed + 1000 + r, cfg.threads);
        auto res = mc::independence_test(ens.magnitudes(0), ens.phases(1));
        if (res.p_value >= 0.01) ++rep.non_reject;
    }
    rep.pass = rep.non_reject >= static_cast<int>(std::ceil(0.97 * reps));
    return rep;
}

BoundsReport concentration_bounds(const Config& cfg) {
    ToneBench bench;
    BoundsReport rep;
    int idx = 0;
    for (double q_target : {4.0, 16.0, 64.0}) {
        auto ens = bench.ensemble(q_target, cfg.n_paths, cfg.seed + 60 + idx++,
                                  cfg.threads);
        double q = std::norm(ens.clean[0]) / bench.gamma_ss;
        double wf_abs = std::abs(ens.clean[0]);
        double theta_f = phase_of(ens.clean[0]);

        for (double eps : {0.25, 0.5, 1.0}) {
            std::size_t hits = 0;
            for (std::size_t p = 0; p < ens.n_paths; ++p)
                if (std::abs(std::abs(ens.at(p, 0)) / wf_abs - 1.0) > eps) ++hits;
            BoundRow row{"magnitude", eps, 0.0, q, q,
                         bounds::magnitude_concentration_bound(q, eps),
                         static_cast<double>(hits) / ens.n_paths, ens.n_paths, true};
            double slack =
                mc::wilson_interval(hits, ens.n_paths, 4.0).hi - row.empirical;
            row.ok = row.empirical <= row.bound + slack;
            rep.rows.push_back(row);
        }

        for (double eps : {0.3, 0.6, 1.0, 1.4}) {
            std::size_t hits_cos = 0, hits_arc = 0;
            for (std::size_t p = 0; p < ens.n_paths; ++p) {
                double dth = phase_of(ens.at(p, 0)) - theta_f;
                if (1.0 - std::abs(std::cos(dth)) > eps) ++hits_cos;
                double arc = std::abs(std::remainder(dth, two_pi));
                if (arc > eps) ++hits_arc;
            }
            double bound = bounds::phase_concentration_bound(q, eps);
            for (auto [kind, hits] :
                 {std::pair<const char*, std::size_t>{"phase_cos", hits_cos},
                  std::pair<const char*, std::size_t>{"phase_arc", hits_arc}}) {
                BoundRow row{kind, eps, 0.0, q, q, bound,
                             static_cast<double>(hits) / ens.n_paths, ens.n_paths,
                             true};
                double slack =
                    mc::wilson_interval(hits, ens.n_paths, 4.0).hi - row.empirical;
                row.ok = row.empirical <= row.bound + slack;
                rep.rows.push_back(row);
            }
        }
    }
    for (auto& r : rep.rows) rep.pass = rep.pass && r.ok;
    return rep;
}

BoundsReport ridge_bounds(const Config& cfg) {
    WaveletSpec spec = WaveletSpec::morse(2.0, 1.0);
    double fs = 200.0;
    std::size_t n_t = 2048;
    auto signal = chirp_signal(fs, n_t);
    std::size_t j_probe = 1024;
    double f_inst = j_probe / fs;  // phi'(t) = t
    double s_ridge = 2.5 / (two_pi * f_inst);

    TimeScaleGrid grid;
    grid.t0 = 0.0;
    grid.dt = 1.0 / fs;
    grid.n_t = n_t;
    grid.scales = {s_ridge * 0.55, s_ridge, s_ridge * 1.6, s_ridge * 2.4};
    std::sort(grid.scales.begin(), grid.scales.end());
    std::size_t ridge_idx = 1;  // position of s_ridge after sorting

    auto F = SpectralMeasure::white_bandlimited(pi * fs, 2e-4);
    std::vector<mc::Probe> probes;
    for (std::size_t i = 0; i < grid.scales.size(); ++i) probes.push_back({i, j_probe});
    auto ens = mc::run_ensemble(signal, F, spec, grid, probes, cfg.n_paths,
                                cfg.seed + 70, cfg.threads);
    std::vector<TimeScalePoint> pts = ens.points;
    auto g = discrete_gamma(F, spec, pts, 0.0, grid.dt, n_t);

    BoundsReport rep;
    for (double delta : {0.0, 0.2}) {
        for (std::size_t other : {std::size_t(0), std::size_t(2), std::size_t(3)}) {
            double q_r =
                std::norm(ens.clean[ridge_idx]) / g.gamma(ridge_idx, ridge_idx).real();
            double q_o = std::norm(ens.clean[other]) / g.gamma(other, other).real();
            double eps = bounds::ridge_epsilon(std::abs(ens.clean[ridge_idx]),
                                               std::abs(ens.clean[other]), delta);
            auto freq = mc::ridge_misid_frequency(ens, ridge_idx, other, delta, 4.0);
            BoundRow row{"ridge_s=" + std::to_string(grid.scales[other]), eps, delta,
                         q_r, q_o, bounds::ridge_misid_bound(q_r, q_o, eps), freq.freq,
                         freq.n, true};
            row.ok = row.empirical <= row.bound + (freq.wilson.hi - freq.freq);
            rep.rows.push_back(row);
        }
    }
    for (auto& r : rep.rows) rep.pass = rep.pass && r.ok;
    return rep;
}

}  // namespace validate
}  // namespace awt
