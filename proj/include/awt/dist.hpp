#pragma once

#include <Eigen/Dense>
#include <vector>

#include "awt/common.hpp"
#include "awt/spectrum.hpp"

namespace awt {
namespace dist {

// Mean vector W_f and covariance Gamma of the complex Gaussian AWT samples
// at n time-scale points, with the inverse and log-determinant cached.
// Requires reciprocal condition number >= 1e-12.
struct PointContext {
    Eigen::VectorXcd w_f;
    Eigen::MatrixXcd gamma;
    Eigen::MatrixXcd gamma_inv;
    double log_det = 0.0;
    double rcond = 0.0;

    PointContext(const std::vector<cplx>& wf, const Eigen::MatrixXcd& gamma_in);
    PointContext(const std::vector<cplx>& wf, const GammaMatrix& g)
        : PointContext(wf, g.gamma) {}
    int n() const { return static_cast<int>(w_f.size()); }
};

// Density of the circularly symmetric complex Gaussian vector W_Y at w.
double wy_pdf(const Eigen::VectorXcd& w, const PointContext& ctx);

// Rice density with noncentrality m >= 0 and spread sigma2 > 0; the Bessel
// factor enters exponentially scaled, so m r / sigma2 up to 1e6 is safe.
double rice_pdf(double r, double m, double sigma2);

// Density of |W_Y|/|W_f| at SNR q: 2 q r e^{-q(1+r^2)} I0(2 q r).
// q = 0 is the degenerate no-signal case; the ratio is undefined there and
// the convention returns 0.
double magnitude_ratio_pdf(double r, double q);

// Null joint magnitude density, n = 2 closed form.
double mag_joint_pdf_null_n2(double r1, double r2, const Eigen::MatrixXcd& gamma);

// Non-null joint magnitude density, n = 2, as a single angular integral
// (256-node periodic trapezoid, checked by node doubling).
double mag_joint_pdf_n2(double r1, double r2, const PointContext& ctx);

// Null joint magnitude density for n in {1,2,3} via the angular integral
// J(M) = int exp(-v* M v) dtheta_1..dtheta_n, tensor-product trapezoid.
double mag_joint_pdf_null_general(const std::vector<double>& r,
                                  const Eigen::MatrixXcd& gamma);
// log J(M) for a Hermitian M (exposed for tests of the n = 2 closed form).
double log_angular_j(const Eigen::MatrixXcd& m);

// Marginal phase density at SNR q with clean phase theta_f.
double phase_marginal_pdf(double theta, double q, double theta_f);

// Null joint phase density, n = 2 closed form; function of theta2 - theta1.
double phase_joint_pdf_null_n2(double theta1, double theta2,
                               const Eigen::MatrixXcd& gamma);

// Null joint phase density for n in {2,3} via the positive-orthant sphere
// integral (Gauss-Legendre in angular coordinates).
double phase_joint_pdf_null_general(const std::vector<double>& theta,
                                    const Eigen::MatrixXcd& gamma);

// Joint magnitude-phase density at one point (n = 1).
double mag_phase_joint_pdf(double r, double theta, const PointContext& ctx);

}  // namespace dist
}  // namespace awt
