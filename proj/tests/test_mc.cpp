#include <cmath>

#include "awt/bounds.hpp"
#include "awt/cov.hpp"
#include "awt/dist.hpp"
#include "awt/mc.hpp"
#include "awt/rng.hpp"
#include "doctest.h"

using namespace awt;
using namespace awt::mc;

namespace {

TimeScaleGrid grid_with(std::size_t n_t, double dt, std::vector<double> scales) {
    TimeScaleGrid g;
    g.t0 = 0.0;
    g.dt = dt;
    g.n_t = n_t;
    g.scales = std::move(scales);
    return g;
}

}  // namespace

TEST_CASE("ensemble basics: determinism, zero noise, mean") {
    auto spec = WaveletSpec::morse(2.0, 1.0);
    double fs = 100.0;
    auto grid = grid_with(256, 1.0 / fs, log_scales(0.05, 0.2, 4));
    auto signal = tone_signal(8.0, 1.0, fs, 256);
    std::vector<Probe> probes = {{1, 100}, {2, 140}};

    // Zero spectral density: samples equal the clean coefficients exactly.
    auto zero = SpectralMeasure::density({0.0, 1.0}, {0.0, 0.0});
    auto e0 = run_ensemble(signal, zero, spec, grid, probes, 3, 11);
    for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t k = 0; k < 2; ++k) CHECK(e0.at(p, k) == e0.clean[k]);

    auto F = SpectralMeasure::white_bandlimited(pi * fs, 0.01);
    auto a = run_ensemble(signal, F, spec, grid, probes, 64, 5, 1);
    auto b = run_ensemble(signal, F, spec, grid, probes, 64, 5, 4);
    CHECK(a.samples == b.samples);  // scheduling-independent
    auto c = run_ensemble(signal, F, spec, grid, probes, 64, 6, 1);
    CHECK(a.samples != c.samples);

    // CLT: empirical mean within 4 sqrt(Gamma_pp / N).
    std::size_t n_paths = 4000;
    auto e = run_ensemble(signal, F, spec, grid, probes, n_paths, 77, 2);
    std::vector<TimeScalePoint> pts = e.points;
    auto g = discrete_gamma(F, spec, pts, 0.0, grid.dt, grid.n_t);
    for (std::size_t k = 0; k < probes.size(); ++k) {
        cplx mean = 0.0;
        for (std::size_t p = 0; p < n_paths; ++p) mean += e.at(p, k);
        mean /= static_cast<double>(n_paths);
        double tol = 4.0 * std::sqrt(g.gamma(k, k).real() / n_paths);
        CHECK(std::abs(mean - e.clean[k]) <= tol);
    }
}

TEST_CASE("ensemble equals the synthesize + transform pipeline") {
    auto spec = WaveletSpec::morse(2.0, 1.0);
    double dt = 0.02;
    auto grid = grid_with(128, dt, {0.1, 0.17});
    auto F = SpectralMeasure::white_bandlimited(pi / dt, 0.05);
    std::vector<Probe> probes = {{0, 30}, {1, 90}};
    std::size_t n_paths = 8;

    auto ens = run_ensemble({}, F, spec, grid, probes, n_paths, 4242);
    auto paths = synthesize_paths(F, grid.t0, dt, grid.n_t, n_paths, 4242);
    double scale_ref = 0.0;
    for (std::size_t p = 0; p < n_paths; ++p)
        for (std::size_t k = 0; k < probes.size(); ++k)
            scale_ref = std::max(scale_ref, std::abs(ens.at(p, k)));
    for (std::size_t p = 0; p < n_paths; ++p) {
        std::vector<double> row(paths.data.begin() + p * grid.n_t,
                                paths.data.begin() + (p + 1) * grid.n_t);
        auto W = awt_forward(row, dt, spec, grid.scales, grid.t0);
        for (std::size_t k = 0; k < probes.size(); ++k) {
            cplx full = W.at(probes[k].scale_index, probes[k].time_index);
            CHECK(std::abs(full - ens.at(p, k)) <= 1e-10 * scale_ref);
        }
    }
}

TEST_CASE("KS statistic: calibration and edge cases") {
    // Rayleigh via inverse CDF; the statistic should sit under the 99% line
    // in at least 95 of 100 seeded repetitions.
    double gamma_ll = 0.8;
    auto cdf = [&](double r) {
        return r <= 0.0 ? 0.0 : 1.0 - std::exp(-r * r / gamma_ll);
    };
    std::size_t n = 2000;
    int below = 0;
    for (int rep = 0; rep < 100; ++rep) {
        Rng rng = Rng::substream(31337, rep);
        std::vector<double> samples(n);
        for (auto& s : samples) s = std::sqrt(-gamma_ll * std::log(rng.uniform()));
        if (ks_statistic(cdf, samples) < ks_line_99(n)) ++below;
    }
    CHECK(below >= 95);

    // Constant samples against a continuous CDF.
    std::vector<double> constant(500, 0.7);
    double d = ks_statistic(cdf, constant);
    double f = cdf(0.7);
    CHECK(d == doctest::Approx(std::max(f, 1.0 - f)).epsilon(1e-6));

    CHECK_THROWS_AS(ks_statistic(cdf, std::vector<double>(10, 1.0)), domain_error);
}

TEST_CASE("null ensemble: phase uniform, magnitude Rayleigh") {
    auto spec = WaveletSpec::morse(2.0, 1.0);
    double dt = 1.0 / 100.0;
    auto grid = grid_with(512, dt, {0.08});
    auto F = SpectralMeasure::white_bandlimited(pi / dt, 0.02);
    auto ens = run_ensemble({}, F, spec, grid, {{0, 256}}, 4000, 909, 2);

    auto uniform_cdf = [](double th) { return th / two_pi; };
    CHECK(ks_statistic(uniform_cdf, ens.phases(0)) < ks_line_99(4000));

    auto g = discrete_gamma(F, spec, ens.points, 0.0, dt, 512);
    double gll = g.gamma(0, 0).real();
    auto rayleigh_cdf = [&](double r) {
        return r <= 0.0 ? 0.0 : 1.0 - std::exp(-r * r / gll);
    };
    CHECK(ks_statistic(rayleigh_cdf, ens.magnitudes(0)) < ks_line_99(4000));
}

TEST_CASE("circular covariance statistics") {
    std::vector<double> th = {0.1, 1.2, 3.3, 5.1, 2.2};
    auto same = empirical_circular_cov(th, th);
    CHECK(same.mean == cplx(1.0));

    Rng rng(123);
    std::size_t n = 20000;
    std::vector<double> u1(n), u2(n);
    for (std::size_t i = 0; i < n; ++i) {
        u1[i] = two_pi * rng.uniform();
        u2[i] = two_pi * rng.uniform();
    }
    auto indep = empirical_circular_cov(u1, u2);
    CHECK(std::abs(indep.mean) <= 4.0 / std::sqrt(static_cast<double>(n)));

    CHECK_THROWS_AS(empirical_circular_cov(u1, th), domain_error);

    // Against the closed form on a correlated null ensemble.
    auto spec = WaveletSpec::morse(2.0, 1.0);
    double dt = 1.0 / 100.0;
    auto grid = grid_with(512, dt, {0.1});
    auto F = SpectralMeasure::white_bandlimited(pi / dt, 0.02);
    std::vector<Probe> probes = {{0, 250}, {0, 254}};
    auto ens = run_ensemble({}, F, spec, grid, probes, 20000, 2718, 2);
    auto g = discrete_gamma(F, spec, ens.points, 0.0, dt, 512);
    auto closed = cov::circular_cov_phases_null(g.gamma);
    auto emp = empirical_circular_cov(ens.phases(0), ens.phases(1));
    CHECK(std::abs(emp.mean - closed.diff) <= 4.0 * emp.se);
    auto emp_sum = empirical_circular_sum(ens.phases(0), ens.phases(1));
    CHECK(std::abs(emp_sum.mean) <= 4.0 * emp_sum.se);
}

TEST_CASE("independence test: calibration and power") {
    std::size_t n = 10000;
    int rejections = 0;
    for (int rep = 0; rep < 100; ++rep) {
        Rng rng = Rng::substream(5150, rep);
        std::vector<double> mags(n), phases(n);
        for (std::size_t i = 0; i < n; ++i) {
            mags[i] = std::sqrt(-std::log(rng.uniform()));
            phases[i] = two_pi * rng.uniform();
        }
        if (independence_test(mags, phases).p_value < 0.01) ++rejections;
    }
    CHECK(rejections <= 4);  // nominal 1 of 100

    // Same-point magnitude and phase in the null case are independent.
    auto spec = WaveletSpec::morse(2.0, 1.0);
    double dt = 1.0 / 100.0;
    auto grid = grid_with(256, dt, {0.1});
    auto F = SpectralMeasure::white_bandlimited(pi / dt, 0.02);
    auto ens = run_ensemble({}, F, spec, grid, {{0, 128}}, n, 404, 2);
    CHECK(independence_test(ens.magnitudes(0), ens.phases(0)).p_value > 0.01);

    // Constructed dependence is detected decisively.
    std::vector<double> mags(n), dep(n);
    Rng rng(99);
    for (std::size_t i = 0; i < n; ++i) {
        mags[i] = 10.0 * rng.uniform();
        dep[i] = std::fmod(mags[i], two_pi);
    }
    CHECK(independence_test(mags, dep).p_value < 1e-6);
}

TEST_CASE("ridge misidentification frequency") {
    auto spec = WaveletSpec::morse(2.0, 1.0);
    double fs = 200.0;
    std::size_t n_t = 1024;
    auto signal = chirp_signal(fs, n_t);

    // Clean ridge at t = 2.56 s (5.12 s window): f = 2.56 Hz.
    double f_inst = 2.56;
    double s_ridge = (2.0 + 0.5) / (two_pi * f_inst);
    auto grid = grid_with(n_t, 1.0 / fs, {s_ridge * 0.55, s_ridge, s_ridge * 1.9});
    std::vector<Probe> probes = {{1, 512}, {0, 512}, {2, 512}};

    auto zero = SpectralMeasure::density({0.0, 1.0}, {0.0, 0.0});
    auto e0 = run_ensemble(signal, zero, spec, grid, probes, 4, 1);
    CHECK(ridge_misid_frequency(e0, 0, 1, 0.0).freq == 0.0);
    CHECK(ridge_misid_frequency(e0, 0, 2, 0.0).freq == 0.0);

    auto F = SpectralMeasure::white_bandlimited(pi * fs, 2e-4);
    auto ens = run_ensemble(signal, F, spec, grid, probes, 10000, 321, 2);
    auto g = discrete_gamma(F, spec, ens.points, 0.0, grid.dt, n_t);

    for (std::size_t other : {std::size_t(1), std::size_t(2)}) {
        double q_r = std::norm(ens.clean[0]) / g.gamma(0, 0).real();
        double q_o = std::norm(ens.clean[other]) / g.gamma(other, other).real();
        double eps = bounds::ridge_epsilon(std::abs(ens.clean[0]),
                                           std::abs(ens.clean[other]), 0.0);
        double bound = bounds::ridge_misid_bound(q_r, q_o, eps);
        auto freq = ridge_misid_frequency(ens, 0, other, 0.0);
        CHECK(freq.freq <= bound + (freq.wilson.hi - freq.freq));
    }

    // A closer competing scale (smaller eps) is contested more often.
    auto far = ridge_misid_frequency(ens, 0, 2, 0.0);
    auto near = ridge_misid_frequency(ens, 0, 1, 0.0);
    CHECK(near.freq >= far.freq);
}

TEST_CASE("empirical Gamma converges to the analytic covariance") {
    auto spec = WaveletSpec::morse(2.0, 1.0);
    double dt = 1.0 / 100.0;
    auto grid = grid_with(512, dt, {0.07, 0.12});
    auto F = SpectralMeasure::white_bandlimited(pi / dt, 0.03);
    std::vector<Probe> probes = {{0, 200}, {1, 260}};
    auto gd = discrete_gamma(F, spec, {{2.0, 0.07}, {2.6, 0.12}}, 0.0, dt, 512);

    auto max_err = [&](std::size_t n_paths) {
        auto ens = run_ensemble({}, F, spec, grid, probes, n_paths, 1618, 2);
        Eigen::Matrix2cd emp = Eigen::Matrix2cd::Zero();
        for (std::size_t p = 0; p < n_paths; ++p)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    emp(a, b) += ens.at(p, a) * std::conj(ens.at(p, b));
        emp /= static_cast<double>(n_paths);
        double worst = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                worst = std::max(worst, std::abs(emp(a, b) - gd.gamma(a, b)));
        return worst;
    };
    double e2 = max_err(100), e4 = max_err(10000);
    CHECK(e4 < e2 / 3.0);

    // Empirical pseudo-covariance vanishes at the MC rate.
    std::size_t n_paths = 10000;
    auto ens = run_ensemble({}, F, spec, grid, probes, n_paths, 33, 2);
    cplx pseudo = 0.0;
    for (std::size_t p = 0; p < n_paths; ++p) pseudo += ens.at(p, 0) * ens.at(p, 1);
    pseudo /= static_cast<double>(n_paths);
    double scale = std::sqrt(gd.gamma(0, 0).real() * gd.gamma(1, 1).real());
    CHECK(std::abs(pseudo) <= 4.0 * scale / std::sqrt(static_cast<double>(n_paths)));
}

TEST_CASE("histograms") {
    Rng rng(7);
    std::vector<double> m(5000), ph(5000);
    for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] = std::sqrt(-std::log(rng.uniform()));
        ph[i] = two_pi * rng.uniform();
    }
    auto hm = histogram_fd(m);
    double total = 0.0;
    for (double v : hm.mass) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hm.edges.size() == hm.mass.size() + 1);

    auto hp = histogram_phase(ph);
    CHECK(hp.mass.size() == 64);
    total = 0.0;
    for (double v : hp.mass) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("wilson interval") {
    auto w = wilson_interval(0, 100, 3.0);
    CHECK(w.lo == 0.0);
    CHECK(w.hi > 0.0);
    CHECK(w.hi < 0.15);
    auto w2 = wilson_interval(50, 100, 2.0);
    CHECK(w2.lo > 0.35);
    CHECK(w2.hi < 0.65);
    CHECK_THROWS_AS(wilson_interval(1, 0, 2.0), domain_error);
}
