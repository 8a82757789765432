#include <cmath>
#include <complex>

#include "awt/cov.hpp"
#include "awt/dist.hpp"
#include "awt/quadrature.hpp"
#include "awt/rng.hpp"
#include "awt/transform.hpp"
#include "doctest.h"

using namespace awt;
using namespace awt::cov;

namespace {

Eigen::MatrixXcd gamma2(double g11, double g22, cplx g12) {
    Eigen::MatrixXcd g(2, 2);
    g << g11, g12, std::conj(g12), g22;
    return g;
}

}  // namespace

TEST_CASE("ReImWaveletPair symmetry") {
    auto spec = WaveletSpec::klauder(2.0, 0.7, cplx(1.0, 0.4));
    auto pair = ReImWaveletPair::from(spec);
    // Fourier transforms of real functions: g(-l) = conj(g(l)).
    for (double l : {0.3, 1.0, 2.7}) {
        CHECK(std::abs(pair.re(-l) - std::conj(pair.re(l))) < 1e-15);
        CHECK(std::abs(pair.im(-l) - std::conj(pair.im(l))) < 1e-15);
        // Recombination: psi_hat = re + i im on the positive axis.
        CHECK(std::abs(pair.re(l) + cplx(0.0, 1.0) * pair.im(l) - spec.psi_hat(l)) <
              1e-15);
    }
}

TEST_CASE("cov of squared magnitudes: closed-form anchors") {
    auto spec = WaveletSpec::morse(1.0, 1.0);
    auto F = SpectralMeasure::white_improper(1.0);

    // Null, same point: Var(|W_Phi|^2) = Gamma11^2 = 0.0625.
    TimeScalePoint p{0.0, 1.0};
    double v = cov_sq_magnitudes(p, p, F, spec, 0.0, 0.0);
    CHECK(v == doctest::Approx(0.0625).epsilon(1e-7));

    // Exact circular-Gaussian identity at distinct points with complex means:
    // Cov(|W1|^2, |W2|^2) = 2 Re(conj(m1) m2 Gamma12) + |Gamma12|^2.
    TimeScalePoint p1{0.0, 1.0}, p2{0.9, 1.4};
    cplx m1(0.8, -0.5), m2(-0.4, 1.2);
    auto g = compute_gamma(F, spec, {p1, p2});
    double expect = 2.0 * (std::conj(m1) * m2 * g.gamma(0, 1)).real() +
                    std::norm(g.gamma(0, 1));
    double got = cov_sq_magnitudes(p1, p2, F, spec, m1, m2);
    CHECK(got == doctest::Approx(expect).epsilon(1e-6));

    // Vanishing tail, monotone in the time separation.
    double prev = 1e300;
    for (double mult : {2.0, 4.0, 8.0, 16.0}) {
        TimeScalePoint far{mult * 1.0, 1.0};
        double c = std::abs(cov_sq_magnitudes(p1, far, F, spec, 0.0, 0.0));
        CHECK(c < prev);
        prev = c;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("cov of squared magnitudes vs Monte Carlo") {
    auto spec = WaveletSpec::morse(2.0, 1.0);
    double dt = 1.0 / 200.0;
    std::size_t n_t = 2048;
    auto F = SpectralMeasure::white_bandlimited(pi / dt, 0.15);
    TimeScalePoint p1{5.12, 0.10}, p2{5.32, 0.15};
    cplx m1(0.6, 0.3), m2(-0.2, 0.5);

    double analytic = cov_sq_magnitudes(p1, p2, F, spec, m1, m2);

    std::size_t n_paths = 20000;
    std::size_t j1 = static_cast<std::size_t>(std::round(p1.t / dt));
    std::size_t j2 = static_cast<std::size_t>(std::round(p2.t / dt));
    std::vector<double> x(n_paths), y(n_paths);
    auto paths = synthesize_paths(F, 0.0, dt, n_t, n_paths, 99, 2);
    for (std::size_t i = 0; i < n_paths; ++i) {
        std::vector<double> row(paths.data.begin() + i * n_t,
                                paths.data.begin() + (i + 1) * n_t);
        auto W = awt_forward(row, dt, spec, {p1.s, p2.s}, 0.0);
        x[i] = std::norm(m1 + W.at(0, j1));
        y[i] = std::norm(m2 + W.at(1, j2));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n_paths; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n_paths;
    my /= n_paths;
    double cov_emp = 0.0, var_prod = 0.0;
    for (std::size_t i = 0; i < n_paths; ++i) {
        double prod = (x[i] - mx) * (y[i] - my);
        cov_emp += prod;
        var_prod += prod * prod;
    }
    cov_emp /= n_paths;
    var_prod = var_prod / n_paths - sqr(cov_emp);
    double se = std::sqrt(var_prod / n_paths);
    CHECK(std::abs(cov_emp - analytic) <= 4.0 * se);
}

TEST_CASE("null magnitude mean and variance") {
    double g = 0.7;
    auto f_mean = [&](double r) { return r * 2.0 * r / g * std::exp(-r * r / g); };
    double mean_quad = gl_integrate(f_mean, linear_panels(0.0, 12.0, 64), 16);
    CHECK(mean_abs_null(g) == doctest::Approx(mean_quad).epsilon(1e-10));
    auto f_sq = [&](double r) { return r * r * 2.0 * r / g * std::exp(-r * r / g); };
    double var_quad = gl_integrate(f_sq, linear_panels(0.0, 12.0, 64), 16) -
                      sqr(mean_quad);
    CHECK(var_abs_null(g) == doctest::Approx(var_quad).epsilon(1e-10));
}

TEST_CASE("null magnitude covariance and correlation") {
    CHECK(cov_magnitudes_null(gamma2(1.0, 1.0, 0.0)) == 0.0);
    CHECK(corr_magnitudes_null(gamma2(2.0, 0.5, 0.0)) == 0.0);
    CHECK_THROWS_AS(cov_magnitudes_null(gamma2(1.0, 1.0, 1.0)), domain_error);

    // x = 0.25 against the 2-D quadrature of r1 r2 p(r1, r2) - (pi/4).
    auto g = gamma2(1.0, 1.0, 0.5);
    auto outer = [&](double r1) {
        auto inner = [&](double r2) {
            return r1 * r2 * dist::mag_joint_pdf_null_n2(r1, r2, g);
        };
        return gl_integrate(inner, linear_panels(0.0, 7.0, 40), 16);
    };
    double e_prod = gl_integrate(outer, linear_panels(0.0, 7.0, 40), 16);
    double quad_cov = e_prod - 0.25 * pi;  // E|W1| E|W2| = pi/4 for unit diagonals
    CHECK(cov_magnitudes_null(g) == doctest::Approx(quad_cov).epsilon(1e-6));

    // Small-x slope within 1%.
    double x = 1e-4;
    auto gx = gamma2(1.0, 1.0, std::sqrt(x));
    double slope = corr_magnitudes_null(gx) / x;
    CHECK(std::abs(slope - corr_magnitudes_small_x_slope()) <=
          0.01 * corr_magnitudes_small_x_slope());

    // Correlation invariant under Gamma -> c Gamma; covariance scales by c.
    auto ga = gamma2(1.0, 0.8, cplx(0.4, 0.3));
    auto gb = gamma2(3.0, 2.4, cplx(1.2, 0.9));
    CHECK(corr_magnitudes_null(ga) == doctest::Approx(corr_magnitudes_null(gb)).epsilon(1e-12));
    CHECK(3.0 * cov_magnitudes_null(ga) == doctest::Approx(cov_magnitudes_null(gb)).epsilon(1e-12));
}

TEST_CASE("circular covariance of phases") {
    auto c0 = circular_cov_phases_null(gamma2(1.0, 1.0, 0.0));
    CHECK(c0.diff == cplx(0.0));
    CHECK(c0.sum == cplx(0.0));

    // Small-rho linearization within 0.1% relative.
    double rho = 1e-3, arg = 0.9;
    auto g = gamma2(1.0, 1.0, rho * std::exp(cplx(0.0, arg)));
    auto c = circular_cov_phases_null(g);
    cplx lin = 0.25 * pi * std::exp(cplx(0.0, arg)) * rho;
    CHECK(std::abs(c.diff - lin) <= 1e-3 * std::abs(lin));
    CHECK(std::arg(c.diff) == doctest::Approx(arg).epsilon(1e-10));

    // Modulus -> 1 as x -> 1-.
    double xb = 1.0 - 1e-6;
    auto gb = gamma2(1.0, 1.0, std::sqrt(xb) * std::exp(cplx(0.0, 0.3)));
    CHECK(std::abs(circular_cov_phases_null(gb).diff) == doctest::Approx(1.0).epsilon(1e-3));

    // Modulus strictly increasing in x.
    double prev = 0.0;
    for (double xx = 0.05; xx < 1.0; xx += 0.05) {
        auto gx = gamma2(1.0, 1.0, std::sqrt(xx));
        double m = std::abs(circular_cov_phases_null(gx).diff);
        CHECK(m > prev);
        prev = m;
    }

    // Independent check against the 2-D quadrature of
    // e^{i(th1 - th2)} p(th1, th2) at a moderate correlation.
    auto gm = gamma2(1.3, 0.9, 0.55 * std::exp(cplx(0.0, pi / 5.0)));
    auto outer = [&](double t1) {
        auto inner = [&](double t2) {
            return std::exp(cplx(0.0, t1 - t2)) *
                   dist::phase_joint_pdf_null_n2(t1, t2, gm);
        };
        return gl_integrate(inner, linear_panels(0.0, two_pi, 24), 16);
    };
    cplx quad = gl_integrate(outer, linear_panels(0.0, two_pi, 24), 16);
    CHECK(std::abs(circular_cov_phases_null(gm).diff - quad) <= 1e-6);
}

TEST_CASE("phase covariance asymptotic") {
    CHECK(phase_cov_asymptotic(gamma2(1.0, 1.0, cplx(0.0, 0.3))) ==
          doctest::Approx(0.0).epsilon(1e-14));

    auto cov_quad = [](const Eigen::MatrixXcd& g) {
        auto outer = [&](double t1) {
            auto inner = [&](double t2) {
                return (t1 - pi) * (t2 - pi) *
                       dist::phase_joint_pdf_null_n2(t1, t2, g);
            };
            return gl_integrate(inner, linear_panels(0.0, two_pi, 32), 16);
        };
        return gl_integrate(outer, linear_panels(0.0, two_pi, 32), 16);
    };

    double rho = 0.05;
    for (double arg : {0.0, pi / 3.0}) {
        auto g = gamma2(1.0, 1.0, rho * std::exp(cplx(0.0, arg)));
        double asym = phase_cov_asymptotic(g);
        double quad = cov_quad(g);
        CHECK(std::abs(asym - quad) <= 0.05 * std::abs(asym));
    }
    // arg = pi: negatively correlated phases.
    auto gneg = gamma2(1.0, 1.0, -rho);
    CHECK(cov_quad(gneg) < 0.0);
    CHECK(phase_cov_asymptotic(gneg) == doctest::Approx(-0.5 * pi * rho).epsilon(1e-12));
}

TEST_CASE("Morse/white-noise ratio closed form") {
    cplx self = morse_whitenoise_gamma_ratio(1.0, 0.3, 0.3, 2.0, 2.0);
    CHECK(std::abs(self - cplx(1.0)) < 1e-14);
    CHECK(std::abs(morse_whitenoise_gamma_ratio(1.0, 0.0, 0.0, 1.0, 4.0)) ==
          doctest::Approx(0.512).epsilon(1e-12));
    CHECK(std::abs(morse_whitenoise_gamma_ratio(1.0, 2.0, 0.0, 1.0, 1.0)) ==
          doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-12));

    // Against the quadrature route (compute_gamma), 1e-8 relative.
    auto spec = WaveletSpec::morse(1.0, 1.0);
    auto F = SpectralMeasure::white_improper(0.7);
    const double cfgs[2][4] = {{0.2, -0.5, 0.8, 1.7}, {1.0, 1.3, 2.0, 0.6}};
    for (auto& c : cfgs) {
        auto g = compute_gamma(F, spec, {{c[0], c[2]}, {c[1], c[3]}});
        cplx got = g.gamma(0, 1) /
                   std::sqrt(g.gamma(0, 0).real() * g.gamma(1, 1).real());
        cplx closed = morse_whitenoise_gamma_ratio(1.0, c[0], c[1], c[2], c[3]);
        CHECK(std::abs(got - closed) <= 1e-8 * std::abs(closed));
        CHECK(std::abs(closed) <= 1.0 + 1e-12);
    }
}
