#pragma once

#include <string>
#include <vector>

#include "awt/common.hpp"

namespace awt {

// Analytic mother wavelet, represented by its Fourier transform psi_hat only:
// the transform and every covariance integral are frequency-domain, so the
// time-domain waveform is never materialized. psi_hat(lambda) = 0 for
// lambda <= 0 (analyticity), and |psi_hat| is unimodal on (0, inf).
class WaveletSpec {
  public:
    enum class Family { morse, klauder, custom };

    // psi_hat(l) = a * l^beta1 * exp(-l^beta2),  beta1 >= 1, beta2 > 0.
    // unit_peak rescales a so |psi_hat| = 1 at the peak.
    static WaveletSpec morse(double beta1, double beta2, double a = 1.0,
                             bool unit_peak = false);

    // psi_hat(l) = l^alpha * exp(-gamma l) * exp(i beta log l),
    // alpha >= 1, Re(gamma) > 0.
    static WaveletSpec klauder(double alpha, double beta, cplx gamma);

    // Tabulated psi_hat on a strictly increasing grid of lambda > 0 with at
    // least 16 nodes; linear interpolation between nodes, zero outside.
    static WaveletSpec custom(std::vector<double> lambda, std::vector<cplx> values);

    cplx psi_hat(double lambda) const;

    // Location of the maximum of |psi_hat| on (0, inf). Closed form for
    // Morse/Klauder; grid argmax (with a unimodality check) for custom.
    double peak_lambda() const;

    // Center frequency omega_psi = argmax / (2 pi), cycles per unit time.
    double center_frequency() const { return peak_lambda() / two_pi; }

    // Smallest lambda beyond the peak with |psi_hat(lambda)|^2 below
    // rel_floor * peak^2; integration cutoffs derive from this.
    double decay_lambda(double rel_floor = 1e-16) const;

    Family family() const { return family_; }
    double morse_beta1() const { return beta1_; }
    double morse_beta2() const { return beta2_; }
    double morse_amplitude() const { return amp_; }
    double klauder_alpha() const { return alpha_; }
    double klauder_beta() const { return kbeta_; }
    cplx klauder_gamma() const { return gamma_; }
    const std::vector<double>& table_lambda() const { return tab_lambda_; }

  private:
    WaveletSpec() = default;
    Family family_ = Family::morse;
    double beta1_ = 1.0, beta2_ = 1.0, amp_ = 1.0;
    double alpha_ = 1.0, kbeta_ = 0.0;
    cplx gamma_ = 1.0;
    std::vector<double> tab_lambda_;
    std::vector<cplx> tab_values_;
};

// Morse beta1 (with beta2 = 1) for which the magnitude ridge of a pure tone,
// argmax_s sqrt(s) |psi_hat(2 pi f s)|, sits exactly at s = 1/f. The argmax
// solves beta1 + 1/2 = 2 pi f s, so beta1 = 2 pi - 1/2 pins s = 1/f.
inline double morse_unit_ridge_beta1() { return two_pi - 0.5; }

// One decay condition sup_{lambda in range} |lambda^p D^k psi_hat(lambda)|
// from the contour-regularity assumptions. Conditions with k = 0 restrict to
// lambda > 1; derivative conditions cover the whole grid.
struct DecayCondition {
    int k = 0;
    int p = 0;
    double sup = 0.0;
    bool finite = true;
};

struct DecayReport {
    std::vector<DecayCondition> conditions;
    bool all_finite = true;
};

// Supremum estimates of the eight decay conditions over the given grid.
// Derivatives by central finite differences with relative step h = 1e-4 l.
// Grid must have at least 16 positive points.
DecayReport decay_report(const WaveletSpec& spec, const std::vector<double>& grid);

}  // namespace awt
