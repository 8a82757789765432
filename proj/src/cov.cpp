#include "awt/cov.hpp"

#include <cmath>

#include "awt/specfun.hpp"

namespace awt {
namespace cov {

using specfun::hyp2f1_33c;

ReImWaveletPair ReImWaveletPair::from(const WaveletSpec& spec) {
    ReImWaveletPair p;
    p.re = [&spec](double l) {
        return 0.5 * (spec.psi_hat(l) + std::conj(spec.psi_hat(-l)));
    };
    p.im = [&spec](double l) {
        return (spec.psi_hat(l) - std::conj(spec.psi_hat(-l))) / cplx(0.0, 2.0);
    };
    return p;
}

double cov_sq_magnitudes(const TimeScalePoint& p1, const TimeScalePoint& p2,
                         const SpectralMeasure& F, const WaveletSpec& spec,
                         cplx w_f1, cplx w_f2) {
    auto pair = ReImWaveletPair::from(spec);
    // Response kernels of Re(W_Phi) and Im(W_Phi): the transform kernel is
    // conj(psi), so the imaginary-part filter carries a minus sign
    // (Im(conj psi) = -Im(psi)).
    std::function<cplx(double)> h[2] = {
        pair.re, [&pair](double l) { return -pair.im(l); }};
    double parts1[2] = {w_f1.real(), w_f1.imag()};
    double parts2[2] = {w_f2.real(), w_f2.imag()};

    double lam_max = std::min(spec.decay_lambda(1e-20) / p1.s,
                              spec.decay_lambda(1e-20) / p2.s);
    double dt = p1.t - p2.t;
    double ss = p1.s * p2.s;
    cplx total = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            cplx pairing =
                spectral_pairing(F, h[a], h[b], dt, p1.s, p2.s, lam_max, 1e-9);
            total += 4.0 * parts1[a] * parts2[b] * std::sqrt(ss) * pairing;
            total += 2.0 * ss * pairing * pairing;
        }
    }
    return total.real();
}

double mean_abs_null(double gamma_ll) {
    if (!(gamma_ll > 0.0)) throw domain_error("mean_abs_null: need Gamma_ll > 0");
    return 0.5 * std::sqrt(pi * gamma_ll);
}

double var_abs_null(double gamma_ll) {
    if (!(gamma_ll > 0.0)) throw domain_error("var_abs_null: need Gamma_ll > 0");
    return (1.0 - 0.25 * pi) * gamma_ll;
}

namespace {

double correlation_x(const Eigen::MatrixXcd& gamma) {
    if (gamma.rows() != 2 || gamma.cols() != 2)
        throw domain_error("null covariance: need a 2x2 Gamma");
    double g11 = gamma(0, 0).real(), g22 = gamma(1, 1).real();
    if (!(g11 > 0.0) || !(g22 > 0.0))
        throw domain_error("null covariance: diagonal must be positive");
    double x = std::norm(gamma(0, 1)) / (g11 * g22);
    if (!(x < 1.0)) throw domain_error("null covariance: degenerate correlation");
    return x;
}

}  // namespace

double cov_magnitudes_null(const Eigen::MatrixXcd& gamma) {
    double x = correlation_x(gamma);
    double g11 = gamma(0, 0).real(), g22 = gamma(1, 1).real();
    if (x == 0.0) return 0.0;
    double bracket = sqr(1.0 - x) * hyp2f1_33c(1, x) - 1.0;
    return 0.25 * pi * std::sqrt(g11 * g22) * bracket;
}

double corr_magnitudes_null(const Eigen::MatrixXcd& gamma) {
    double x = correlation_x(gamma);
    if (x == 0.0) return 0.0;
    double bracket = sqr(1.0 - x) * hyp2f1_33c(1, x) - 1.0;
    return bracket / (4.0 / pi - 1.0);
}

double corr_magnitudes_small_x_slope() { return 1.0 / (16.0 / pi - 4.0); }

CircularCov circular_cov_phases_null(const Eigen::MatrixXcd& gamma) {
    double x = correlation_x(gamma);
    CircularCov out;
    out.sum = 0.0;
    if (x == 0.0) {
        out.diff = 0.0;
        return out;
    }
    double g11 = gamma(0, 0).real(), g22 = gamma(1, 1).real();
    double rho = std::abs(gamma(0, 1)) / std::sqrt(g11 * g22);
    double arg = std::arg(gamma(0, 1));
    out.diff = 0.25 * pi * std::exp(cplx(0.0, arg)) * (1.0 - x) * rho *
               hyp2f1_33c(2, x);
    return out;
}

double phase_cov_asymptotic(const Eigen::MatrixXcd& gamma) {
    if (gamma.rows() != 2 || gamma.cols() != 2)
        throw domain_error("phase_cov_asymptotic: need a 2x2 Gamma");
    cplx g12 = gamma(0, 1);
    if (g12 == cplx(0.0)) return 0.0;
    double rho = std::abs(g12) /
                 std::sqrt(gamma(0, 0).real() * gamma(1, 1).real());
    return 0.5 * pi * std::cos(std::arg(g12)) * rho;
}

cplx morse_whitenoise_gamma_ratio(double alpha, double t1, double t2, double s1,
                                  double s2) {
    if (!(alpha >= 1.0) || !(s1 > 0.0) || !(s2 > 0.0))
        throw domain_error("morse_whitenoise_gamma_ratio: bad parameters");
    double p = 2.0 * alpha + 1.0;
    cplx den = std::pow(cplx(s1 + s2, -(t1 - t2)), p);
    return std::pow(2.0, p) * std::pow(s1 * s2, alpha + 0.5) / den;
}

}  // namespace cov
}  // namespace awt
