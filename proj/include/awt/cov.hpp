#pragma once

#include <Eigen/Dense>
#include <functional>

#include "awt/common.hpp"
#include "awt/spectrum.hpp"
#include "awt/wavelet.hpp"

namespace awt {
namespace cov {

// Fourier transforms of Re(psi) and Im(psi), supported on both half-lines:
//   psi_hat_re(l) = (psi_hat(l) + conj(psi_hat(-l))) / 2
//   psi_hat_im(l) = (psi_hat(l) - conj(psi_hat(-l))) / (2i)
struct ReImWaveletPair {
    std::function<cplx(double)> re;
    std::function<cplx(double)> im;
    static ReImWaveletPair from(const WaveletSpec& spec);
};

// Cov(|W_Y(p1)|^2, |W_Y(p2)|^2): signal-noise cross terms plus noise-noise
// terms, summed over the four (Re/Im, Re/Im) filter pairs. W_f values are the
// clean AWT at the two points. Does not require the wavelet to be analytic.
double cov_sq_magnitudes(const TimeScalePoint& p1, const TimeScalePoint& p2,
                         const SpectralMeasure& F, const WaveletSpec& spec,
                         cplx w_f1, cplx w_f2);

// E|W_Phi| and Var|W_Phi| for one point with noise energy gamma_ll.
double mean_abs_null(double gamma_ll);
double var_abs_null(double gamma_ll);

// Null covariance / correlation of magnitudes from a 2x2 Gamma,
// x = |Gamma12|^2 / (Gamma11 Gamma22) < 1 required.
double cov_magnitudes_null(const Eigen::MatrixXcd& gamma);
double corr_magnitudes_null(const Eigen::MatrixXcd& gamma);

// Small-x slope of corr_magnitudes_null: corr ~ x / (16/pi - 4).
double corr_magnitudes_small_x_slope();

struct CircularCov {
    cplx diff;  // E[e^{i(Theta1 - Theta2)}]
    cplx sum;   // E[e^{i(Theta1 + Theta2)}]; exactly zero by circularity
};
CircularCov circular_cov_phases_null(const Eigen::MatrixXcd& gamma);

// Leading-order Cov(Theta1, Theta2) (phases on [0, 2 pi), centered at pi) as
// the correlation ratio tends to zero: (pi/2) cos(arg Gamma12) |rho|.
double phase_cov_asymptotic(const Eigen::MatrixXcd& gamma);

// Morse wavelet psi_hat = l^alpha e^{-l} with white noise:
// Gamma12/sqrt(Gamma11 Gamma22) in closed form.
cplx morse_whitenoise_gamma_ratio(double alpha, double t1, double t2, double s1,
                                  double s2);

}  // namespace cov
}  // namespace awt
