#include "awt/dist.hpp"

#include <cmath>

#include "awt/quadrature.hpp"
#include "awt/specfun.hpp"

namespace awt {
namespace dist {

using specfun::bessel_i;

PointContext::PointContext(const std::vector<cplx>& wf,
                           const Eigen::MatrixXcd& gamma_in) {
    const auto n = static_cast<Eigen::Index>(wf.size());
    if (n == 0 || gamma_in.rows() != n || gamma_in.cols() != n)
        throw domain_error("PointContext: mean/covariance size mismatch");
    w_f = Eigen::VectorXcd(n);
    for (Eigen::Index i = 0; i < n; ++i) w_f(i) = wf[i];
    gamma = gamma_in;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gamma);
    double eig_min = es.eigenvalues().minCoeff();
    double eig_max = es.eigenvalues().maxCoeff();
    rcond = eig_max > 0.0 ? eig_min / eig_max : 0.0;
    if (!(rcond >= 1e-12))
        throw numeric_error("PointContext: covariance matrix ill-conditioned, rcond = " +
                                std::to_string(rcond),
                            rcond);
    log_det = es.eigenvalues().array().log().sum();
    gamma_inv = es.eigenvectors() *
                es.eigenvalues().array().inverse().matrix().asDiagonal() *
                es.eigenvectors().adjoint();
}

double wy_pdf(const Eigen::VectorXcd& w, const PointContext& ctx) {
    Eigen::VectorXcd d = w - ctx.w_f;
    double quad = (d.adjoint() * ctx.gamma_inv * d)(0).real();
    double logp = -ctx.n() * std::log(pi) - ctx.log_det - quad;
    return std::exp(logp);
}

double rice_pdf(double r, double m, double sigma2) {
    if (!(sigma2 > 0.0)) throw domain_error("rice_pdf: sigma2 must be > 0");
    if (!(m >= 0.0)) throw domain_error("rice_pdf: m must be >= 0");
    if (!(r >= 0.0)) throw domain_error("rice_pdf: r must be >= 0");
    if (r == 0.0) return 0.0;
    double z = m * r / sigma2;
    return r / sigma2 * std::exp(-sqr(r - m) / (2.0 * sigma2)) * bessel_i(0, z, true);
}

double magnitude_ratio_pdf(double r, double q) {
    if (!(r >= 0.0) || !(q >= 0.0)) throw domain_error("magnitude_ratio_pdf: bad input");
    if (q == 0.0 || r == 0.0) return 0.0;
    return 2.0 * q * r * std::exp(-q * sqr(1.0 - r)) * bessel_i(0, 2.0 * q * r, true);
}

double mag_joint_pdf_null_n2(double r1, double r2, const Eigen::MatrixXcd& gamma) {
    if (gamma.rows() != 2 || gamma.cols() != 2)
        throw domain_error("mag_joint_pdf_null_n2: need a 2x2 covariance");
    double g11 = gamma(0, 0).real(), g22 = gamma(1, 1).real();
    double a12 = std::abs(gamma(0, 1));
    double det = g11 * g22 - a12 * a12;
    if (!(det > 0.0)) throw numeric_error("mag_joint_pdf_null_n2: det(Gamma) <= 0", det);
    if (r1 < 0.0 || r2 < 0.0) throw domain_error("mag_joint_pdf_null_n2: radii must be >= 0");
    if (r1 == 0.0 || r2 == 0.0) return 0.0;
    // Quadratic form minus the Bessel exponent is a nonnegative exponent:
    // (g22 r1^2 + g11 r2^2 - 2 |G12| r1 r2) / det >= 0 by Cauchy-Schwarz.
    double expo = (g22 * r1 * r1 + g11 * r2 * r2 - 2.0 * a12 * r1 * r2) / det;
    double z = 2.0 * a12 * r1 * r2 / det;
    return 4.0 * r1 * r2 / det * std::exp(-expo) * bessel_i(0, z, true);
}

double mag_joint_pdf_n2(double r1, double r2, const PointContext& ctx) {
    if (ctx.n() != 2) throw domain_error("mag_joint_pdf_n2: need n = 2");
    if (r1 < 0.0 || r2 < 0.0) throw domain_error("mag_joint_pdf_n2: radii must be >= 0");
    double g11 = ctx.gamma(0, 0).real(), g22 = ctx.gamma(1, 1).real();
    double a12 = std::abs(ctx.gamma(0, 1));
    double spread = 0.5 * (g22 - a12 * a12 / g11);
    cplx wf1 = ctx.w_f(0), wf2 = ctx.w_f(1);
    // Conditional mean coefficient of W2 given W1 is conj(Gamma12)/Gamma11:
    // E[(W2 - c W1) conj(W1)] = Gamma21 - c Gamma11 = 0.
    cplx coef = std::conj(ctx.gamma(0, 1)) / g11;
    auto integrand = [&](double theta) {
        cplx z = r1 * std::exp(cplx(0.0, theta)) - wf1;
        double m = std::abs(coef * z + wf2);
        return rice_pdf(r2, m, spread) * std::exp(-std::norm(z) / g11);
    };
    double coarse = periodic_trapezoid(integrand, 256);
    double fine = periodic_trapezoid(integrand, 512);
    double scale = std::max({std::abs(fine), std::abs(coarse), 1e-300});
    if (std::abs(fine - coarse) / scale > 1e-6)
        throw numeric_error("mag_joint_pdf_n2: angular quadrature not converged",
                            std::abs(fine - coarse) / scale);
    return r1 / (pi * g11) * fine;
}

double log_angular_j(const Eigen::MatrixXcd& m) {
    const int n = static_cast<int>(m.rows());
    if (n < 1 || n > 3) throw unsupported_error("angular J: n must be in {1,2,3}");
    double diag = 0.0;
    for (int i = 0; i < n; ++i) diag += m(i, i).real();
    if (n == 1) return std::log(two_pi) - diag;

    // v* M v = sum_l M_ll + 2 sum_{l<l'} Re(M_{ll'} e^{i(th_l' - th_l)}).
    // The cross part is bounded by B = 2 sum |M_{ll'}|; shift by it so the
    // grid sum never overflows.
    double bound = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) bound += 2.0 * std::abs(m(a, b));

    const int nodes = n <= 2 ? 128 : 96;
    const double step = two_pi / nodes;
    double acc = 0.0;
    if (n == 2) {
        cplx m01 = m(0, 1);
        for (int i = 0; i < nodes; ++i)
            for (int j = 0; j < nodes; ++j) {
                double cross =
                    2.0 * (m01 * std::exp(cplx(0.0, step * (j - i)))).real();
                acc += std::exp(-cross - bound);
            }
        return -diag + bound + std::log(acc) + 2.0 * std::log(step);
    }
    cplx m01 = m(0, 1), m02 = m(0, 2), m12 = m(1, 2);
    for (int i = 0; i < nodes; ++i)
        for (int j = 0; j < nodes; ++j)
            for (int k = 0; k < nodes; ++k) {
                double cross =
                    2.0 * (m01 * std::exp(cplx(0.0, step * (j - i)))).real() +
                    2.0 * (m02 * std::exp(cplx(0.0, step * (k - i)))).real() +
                    2.0 * (m12 * std::exp(cplx(0.0, step * (k - j)))).real();
                acc += std::exp(-cross - bound);
            }
    return -diag + bound + std::log(acc) + 3.0 * std::log(step);
}

double mag_joint_pdf_null_general(const std::vector<double>& r,
                                  const Eigen::MatrixXcd& gamma) {
    const int n = static_cast<int>(r.size());
    if (n < 1 || n > 3)
        throw unsupported_error("mag_joint_pdf_null_general: n must be in {1,2,3}");
    if (gamma.rows() != n || gamma.cols() != n)
        throw domain_error("mag_joint_pdf_null_general: size mismatch");
    double log_r = 0.0;
    for (double v : r) {
        if (v < 0.0) throw domain_error("mag_joint_pdf_null_general: radii must be >= 0");
        if (v == 0.0) return 0.0;
        log_r += std::log(v);
    }
    PointContext ctx(std::vector<cplx>(n, cplx(0.0)), gamma);
    Eigen::VectorXd rd(n);
    for (int i = 0; i < n; ++i) rd(i) = r[i];
    Eigen::MatrixXcd m = rd.asDiagonal() * ctx.gamma_inv * rd.asDiagonal();
    double logp = log_r - n * std::log(pi) - ctx.log_det + log_angular_j(m);
    return std::exp(logp);
}

double phase_marginal_pdf(double theta, double q, double theta_f) {
    if (!(q >= 0.0)) throw domain_error("phase_marginal_pdf: q must be >= 0");
    double c = std::cos(theta - theta_f);
    double half = 0.5 / pi * std::exp(-q);
    if (q == 0.0) return half;
    double sq = std::sqrt(q);
    double b = 1.0 + specfun::erf(sq * c);
    return half + 0.5 * sq / std::sqrt(pi) * c * std::exp(-q * (1.0 - c * c)) * b;
}

double phase_joint_pdf_null_n2(double theta1, double theta2,
                               const Eigen::MatrixXcd& gamma) {
    if (gamma.rows() != 2 || gamma.cols() != 2)
        throw domain_error("phase_joint_pdf_null_n2: need a 2x2 covariance");
    double g11 = gamma(0, 0).real(), g22 = gamma(1, 1).real();
    cplx g12 = gamma(0, 1);
    double det = g11 * g22 - std::norm(g12);
    if (!(det > 0.0))
        throw numeric_error("phase_joint_pdf_null_n2: degenerate correlation", det);
    double c = (g12 * std::exp(cplx(0.0, theta2 - theta1))).real();
    double d = g11 * g22 - c * c;
    return det / (4.0 * pi * pi) *
           (1.0 / d +
            c / std::pow(d, 1.5) * (0.5 * pi + std::atan(c / std::sqrt(d))));
}

double phase_joint_pdf_null_general(const std::vector<double>& theta,
                                    const Eigen::MatrixXcd& gamma) {
    const int n = static_cast<int>(theta.size());
    if (n != 2 && n != 3)
        throw unsupported_error("phase_joint_pdf_null_general: n must be 2 or 3");
    if (gamma.rows() != n || gamma.cols() != n)
        throw domain_error("phase_joint_pdf_null_general: size mismatch");
    PointContext ctx(std::vector<cplx>(n, cplx(0.0)), gamma);
    Eigen::VectorXcd u(n);
    for (int i = 0; i < n; ++i) u(i) = std::exp(cplx(0.0, -theta[i]));
    Eigen::MatrixXcd m = u.asDiagonal() * ctx.gamma_inv *
                         u.conjugate().asDiagonal();
    Eigen::MatrixXd mr = m.real();

    double integral = 0.0;
    if (n == 2) {
        auto f = [&](double a) {
            double w1 = std::cos(a), w2 = std::sin(a);
            double quad = mr(0, 0) * w1 * w1 + 2.0 * mr(0, 1) * w1 * w2 +
                          mr(1, 1) * w2 * w2;
            return w1 * w2 / sqr(quad);
        };
        integral = gl_integrate(f, linear_panels(0.0, 0.5 * pi, 8), 24);
    } else {
        auto f = [&](double a, double b) {
            double w1 = std::sin(a) * std::cos(b);
            double w2 = std::sin(a) * std::sin(b);
            double w3 = std::cos(a);
            Eigen::Vector3d w(w1, w2, w3);
            double quad = w.dot(mr * w);
            return w1 * w2 * w3 / (quad * quad * quad) * std::sin(a);
        };
        const auto& gl = GaussLegendre::order(64);
        double half = 0.25 * pi;  // map [-1,1] -> [0, pi/2]
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j < 64; ++j)
                integral += gl.weights[i] * gl.weights[j] *
                            f(half * (gl.nodes[i] + 1.0), half * (gl.nodes[j] + 1.0));
        integral *= half * half;
    }
    double factorial = (n == 2) ? 1.0 : 2.0;
    return factorial / (2.0 * std::pow(pi, n) * std::exp(ctx.log_det)) * integral;
}

double mag_phase_joint_pdf(double r, double theta, const PointContext& ctx) {
    if (ctx.n() != 1) throw domain_error("mag_phase_joint_pdf: need n = 1");
    if (r < 0.0) throw domain_error("mag_phase_joint_pdf: r must be >= 0");
    double sigma2 = ctx.gamma(0, 0).real();
    double wf_abs = std::abs(ctx.w_f(0));
    double theta_f = std::arg(ctx.w_f(0));
    // |W_f|^2 + r^2 - 2 r |W_f| cos = (r - |W_f|)^2 + 2 r |W_f| (1 - cos) >= 0.
    double expo = (sqr(r - wf_abs) +
                   2.0 * r * wf_abs * (1.0 - std::cos(theta - theta_f))) /
                  sigma2;
    return r / (pi * sigma2) * std::exp(-expo);
}

}  // namespace dist
}  // namespace awt
