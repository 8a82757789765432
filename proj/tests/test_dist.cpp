#include <cmath>
#include <complex>

#include "awt/dist.hpp"
#include "awt/quadrature.hpp"
#include "awt/specfun.hpp"
#include "doctest.h"

using namespace awt;
using namespace awt::dist;

namespace {

Eigen::MatrixXcd gamma2(double g11, double g22, cplx g12) {
    Eigen::MatrixXcd g(2, 2);
    g << g11, g12, std::conj(g12), g22;
    return g;
}

double rayleigh(double r, double gamma_ll) {
    return 2.0 * r / gamma_ll * std::exp(-r * r / gamma_ll);
}

}  // namespace

TEST_CASE("wy_pdf basics") {
    Eigen::MatrixXcd g1(1, 1);
    g1 << 1.0;
    PointContext ctx({cplx(0.0)}, g1);
    Eigen::VectorXcd w(1);
    w << cplx(0.0);
    CHECK(wy_pdf(w, ctx) == doctest::Approx(1.0 / pi).epsilon(1e-14));

    // Normalizes to 1 over C (polar quadrature).
    PointContext ctx2({cplx(0.4, -0.3)}, g1);
    auto radial = [&](double r) {
        auto ang = [&](double th) {
            Eigen::VectorXcd z(1);
            z << r * std::exp(cplx(0.0, th));
            return wy_pdf(z, ctx2);
        };
        return r * periodic_trapezoid(ang, 128);
    };
    double total = gl_integrate(radial, linear_panels(0.0, 8.0, 64), 16);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));

    // Circular symmetry: density depends on w only through |w - W_f|.
    PointContext ctx3({cplx(1.0, 2.0)}, g1);
    Eigen::VectorXcd a(1), b(1);
    a << cplx(1.0, 2.0) + cplx(0.7, -0.1);
    b << cplx(1.0, 2.0) + cplx(0.7, -0.1) * std::exp(cplx(0.0, 2.31));
    CHECK(wy_pdf(a, ctx3) == doctest::Approx(wy_pdf(b, ctx3)).epsilon(1e-12));

    Eigen::MatrixXcd singular(2, 2);
    singular << 1.0, 1.0, 1.0, 1.0;
    CHECK_THROWS_AS(PointContext({cplx(0.0), cplx(0.0)}, singular), numeric_error);
}

TEST_CASE("rice_pdf") {
    CHECK_THROWS_AS(rice_pdf(1.0, 0.0, 0.0), domain_error);
    CHECK(rice_pdf(1.0, 0.0, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));

    auto f = [](double r) { return rice_pdf(r, 2.0, 0.5); };
    double total = gl_integrate(f, linear_panels(0.0, 12.0, 96), 16);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));

    // Huge noncentrality: scaled Bessel keeps it finite.
    CHECK(std::isfinite(rice_pdf(1000.0, 1000.0, 1.0)));
}

TEST_CASE("magnitude_ratio_pdf") {
    // q = 1, r = 1: 2 e^{-2} I0(2), with I0(2) from the quadrature oracle.
    auto i0_oracle = [](double x) {
        auto f = [&](double u) { return std::exp(x * std::cos(u)); };
        return periodic_trapezoid(f, 2048) / two_pi;
    };
    double expect = 2.0 * std::exp(-2.0) * i0_oracle(2.0);
    CHECK(magnitude_ratio_pdf(1.0, 1.0) == doctest::Approx(expect).epsilon(1e-12));

    for (double r : {0.1, 0.7, 2.0}) CHECK(magnitude_ratio_pdf(r, 0.0) == 0.0);

    auto f4 = [](double r) { return magnitude_ratio_pdf(r, 4.0); };
    CHECK(gl_integrate(f4, linear_panels(0.0, 10.0, 128), 16) ==
          doctest::Approx(1.0).epsilon(1e-8));

    // Asymptotic shape at q = 100 on r in [0.8, 1.2].
    double q = 100.0;
    for (double r = 0.8; r <= 1.2; r += 0.05) {
        double apx = std::sqrt(q * r / pi) * std::exp(-q * sqr(1.0 - r));
        double ratio = magnitude_ratio_pdf(r, q) / apx;
        CHECK(ratio > 0.98);
        CHECK(ratio < 1.02);
    }

    // Mode within 2/sqrt(q) of r = 1 for q >= 25.
    for (double qq : {25.0, 100.0, 400.0}) {
        double best_r = 0.0, best_p = -1.0;
        for (double r = 0.0; r <= 3.0; r += 1e-3) {
            double p = magnitude_ratio_pdf(r, qq);
            if (p > best_p) {
                best_p = p;
                best_r = r;
            }
        }
        CHECK(std::abs(best_r - 1.0) <= 2.0 / std::sqrt(qq));
    }

    // P(|R-1| > 0.1) strictly decreasing in q.
    auto tail_mass = [](double qv) {
        auto below = [&](double r) { return magnitude_ratio_pdf(r, qv); };
        double inside = gl_integrate(below, linear_panels(0.9, 1.1, 32), 16);
        return 1.0 - inside;
    };
    double prev = tail_mass(1.0);
    for (double qv : {4.0, 16.0, 64.0}) {
        double cur = tail_mass(qv);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("null n=2 magnitude joint pdf") {
    // Gamma12 = 0: product of Rayleighs.
    auto g0 = gamma2(1.3, 0.6, 0.0);
    for (double r1 : {0.2, 1.0})
        for (double r2 : {0.5, 1.4})
            CHECK(mag_joint_pdf_null_n2(r1, r2, g0) ==
                  doctest::Approx(rayleigh(r1, 1.3) * rayleigh(r2, 0.6)).epsilon(1e-12));

    // Normalization within 1e-6.
    auto g = gamma2(1.0, 1.0, cplx(0.5, 0.2));
    auto outer = [&](double r1) {
        auto inner = [&](double r2) { return mag_joint_pdf_null_n2(r1, r2, g); };
        return gl_integrate(inner, linear_panels(0.0, 7.0, 48), 16);
    };
    CHECK(gl_integrate(outer, linear_panels(0.0, 7.0, 48), 16) ==
          doctest::Approx(1.0).epsilon(1e-6));

    // Laguerre series with 60 terms at x = 0.25.
    double r1 = 0.7, r2 = 1.3;
    auto gl2 = gamma2(1.0, 1.0, 0.5);  // |G12|^2/(G11 G22) = 0.25
    double x = 0.25;
    double series = 0.0, xk = 1.0;
    for (int k = 0; k <= 60; ++k) {
        series += xk * specfun::laguerre(k, r1 * r1) * specfun::laguerre(k, r2 * r2);
        xk *= x;
    }
    double expect = 4.0 * r1 * r2 * std::exp(-(r1 * r1 + r2 * r2)) * series;
    CHECK(mag_joint_pdf_null_n2(r1, r2, gl2) == doctest::Approx(expect).epsilon(1e-8));

    CHECK_THROWS_AS(mag_joint_pdf_null_n2(1.0, 1.0, gamma2(1.0, 1.0, 1.0)), numeric_error);
}

TEST_CASE("non-null n=2 magnitude joint pdf") {
    // W_f = 0 reduces to the null closed form.
    auto g = gamma2(1.2, 0.8, cplx(0.4, -0.3));
    PointContext null_ctx({cplx(0.0), cplx(0.0)}, g);
    const double pts[5][2] = {{0.3, 0.4}, {1.0, 0.7}, {0.6, 1.5}, {2.0, 0.2}, {1.1, 1.1}};
    for (auto& p : pts)
        CHECK(mag_joint_pdf_n2(p[0], p[1], null_ctx) ==
              doctest::Approx(mag_joint_pdf_null_n2(p[0], p[1], g)).epsilon(1e-8));

    // Gamma12 = 0 with nonzero means: product of Rice densities.
    auto gd = gamma2(0.9, 1.4, 0.0);
    cplx m1(0.8, -0.2), m2(-0.3, 1.1);
    PointContext ctx_d({m1, m2}, gd);
    for (auto& p : pts) {
        double expect = rice_pdf(p[0], std::abs(m1), 0.45) *
                        rice_pdf(p[1], std::abs(m2), 0.7);
        CHECK(mag_joint_pdf_n2(p[0], p[1], ctx_d) == doctest::Approx(expect).epsilon(1e-10));
    }

    // Against the brute-force double angular integral of the Gaussian pdf --
    // this pins the conditional-mean convention (conj(Gamma12)/Gamma11).
    PointContext ctx({cplx(0.9, 0.4), cplx(-0.5, 0.7)}, g);
    auto brute = [&](double r1, double r2) {
        auto f1 = [&](double th1) {
            auto f2 = [&](double th2) {
                Eigen::VectorXcd w(2);
                w << r1 * std::exp(cplx(0.0, th1)), r2 * std::exp(cplx(0.0, th2));
                return wy_pdf(w, ctx);
            };
            return periodic_trapezoid(f2, 256);
        };
        return r1 * r2 * periodic_trapezoid(f1, 256);
    };
    for (auto& p : pts)
        CHECK(mag_joint_pdf_n2(p[0], p[1], ctx) ==
              doctest::Approx(brute(p[0], p[1])).epsilon(1e-8));

    // Normalization within 1e-5.
    auto outer = [&](double r1) {
        auto inner = [&](double r2) { return mag_joint_pdf_n2(r1, r2, ctx); };
        return gl_integrate(inner, linear_panels(0.0, 8.0, 40), 16);
    };
    CHECK(gl_integrate(outer, linear_panels(0.0, 8.0, 40), 16) ==
          doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("general null magnitude pdf: n = 1, 2, 3") {
    Eigen::MatrixXcd g1(1, 1);
    g1 << 0.7;
    for (double r : {0.2, 0.9, 1.7})
        CHECK(mag_joint_pdf_null_general({r}, g1) ==
              doctest::Approx(rayleigh(r, 0.7)).epsilon(1e-10));

    // n = 2: the numeric J(M) must match 4 pi^2 e^{-(M11+M22)} I0(2|M12|).
    Eigen::MatrixXcd m(2, 2);
    m << 0.8, cplx(0.3, -0.45), cplx(0.3, 0.45), 1.1;
    double logj = log_angular_j(m);
    double closed = 4.0 * pi * pi * std::exp(-(m(0, 0).real() + m(1, 1).real())) *
                    specfun::bessel_i(0, 2.0 * std::abs(m(0, 1)), false);
    CHECK(std::exp(logj) == doctest::Approx(closed).epsilon(1e-8));

    // Consistency of the n = 2 density with the closed form.
    auto g = gamma2(1.0, 0.5, cplx(0.2, 0.1));
    for (double r1 : {0.4, 1.2})
        for (double r2 : {0.3, 0.8})
            CHECK(mag_joint_pdf_null_general({r1, r2}, g) ==
                  doctest::Approx(mag_joint_pdf_null_n2(r1, r2, g)).epsilon(1e-6));

    // n = 3 diagonal: product of Rayleighs.
    Eigen::MatrixXcd g3 = Eigen::MatrixXcd::Zero(3, 3);
    g3(0, 0) = 0.5;
    g3(1, 1) = 1.0;
    g3(2, 2) = 2.0;
    double got = mag_joint_pdf_null_general({0.6, 0.9, 1.4}, g3);
    double expect = rayleigh(0.6, 0.5) * rayleigh(0.9, 1.0) * rayleigh(1.4, 2.0);
    CHECK(got == doctest::Approx(expect).epsilon(1e-6));

    CHECK_THROWS_AS(mag_joint_pdf_null_general({1, 1, 1, 1}, Eigen::MatrixXcd::Identity(4, 4)),
                    unsupported_error);
}

TEST_CASE("phase marginal pdf") {
    for (double th = 0.0; th < two_pi; th += 0.7)
        CHECK(phase_marginal_pdf(th, 0.0, 1.0) == doctest::Approx(1.0 / two_pi).epsilon(1e-15));

    auto f = [](double th) { return phase_marginal_pdf(th, 3.0, 1.2); };
    CHECK(periodic_trapezoid(f, 4096) == doctest::Approx(1.0).epsilon(1e-10));

    for (double q : {0.5, 2.0, 10.0}) {
        double best_th = 0.0, best_p = -1.0;
        int n = 4096;
        for (int i = 0; i < n; ++i) {
            double th = two_pi * i / n;
            double p = phase_marginal_pdf(th, q, 1.2);
            if (p > best_p) {
                best_p = p;
                best_th = th;
            }
        }
        CHECK(std::abs(best_th - 1.2) <= two_pi / n + 1e-12);
    }
}

TEST_CASE("null n=2 phase joint pdf") {
    auto g0 = gamma2(1.0, 2.0, 0.0);
    for (double t1 : {0.0, 1.0})
        for (double t2 : {0.5, 4.0})
            CHECK(phase_joint_pdf_null_n2(t1, t2, g0) ==
                  doctest::Approx(1.0 / (4.0 * pi * pi)).epsilon(1e-14));

    auto g = gamma2(1.0, 1.0, 0.6 * std::exp(cplx(0.0, pi / 3.0)));
    auto outer = [&](double t1) {
        auto inner = [&](double t2) { return phase_joint_pdf_null_n2(t1, t2, g); };
        return periodic_trapezoid(inner, 256);
    };
    CHECK(periodic_trapezoid(outer, 256) == doctest::Approx(1.0).epsilon(1e-6));

    // Difference-profile argmax at arg(conj(Gamma12)) = -pi/3 (mod 2 pi).
    int n = 4096;
    double best_d = 0.0, best_p = -1.0;
    for (int i = 0; i < n; ++i) {
        double d = two_pi * i / n;
        double p = phase_joint_pdf_null_n2(0.0, d, g);
        if (p > best_p) {
            best_p = p;
            best_d = d;
        }
    }
    CHECK(std::abs(best_d - (two_pi - pi / 3.0)) <= two_pi / n + 1e-12);

    CHECK_THROWS_AS(phase_joint_pdf_null_n2(0.0, 1.0, gamma2(1.0, 1.0, cplx(1.0, 0.1))),
                    numeric_error);
}

TEST_CASE("general null phase pdf: n = 2 agreement, n = 3 checks") {
    // n = 2 agreement with the closed form at fixed pseudo-random configs.
    const double cfgs[10][5] = {
        {1.0, 1.0, 0.3, 0.4, 0.2},   {1.5, 0.7, 0.5, -0.6, 2.0},
        {0.8, 1.1, -0.2, 0.3, 4.1},  {2.0, 2.0, 0.9, 0.0, 1.0},
        {1.0, 3.0, 0.5, 0.5, 5.5},   {0.5, 0.5, 0.1, -0.2, 0.7},
        {1.2, 0.9, -0.6, 0.1, 3.3},  {1.0, 1.0, 0.0, 0.7, 2.2},
        {3.0, 1.0, 1.2, -0.4, 0.05}, {1.0, 2.5, -0.3, -0.8, 6.0}};
    for (auto& c : cfgs) {
        auto g = gamma2(c[0], c[1], cplx(c[2], c[3]));
        double th1 = c[4], th2 = 3.0 * c[4] + 0.31;
        double closed = phase_joint_pdf_null_n2(th1, th2, g);
        double general = phase_joint_pdf_null_general({th1, th2}, g);
        CHECK(general == doctest::Approx(closed).epsilon(1e-6));
    }

    // n = 3 diagonal: independent uniform phases.
    Eigen::MatrixXcd g3 = Eigen::MatrixXcd::Zero(3, 3);
    g3(0, 0) = 0.5;
    g3(1, 1) = 1.0;
    g3(2, 2) = 2.0;
    for (double th : {0.3, 2.0})
        CHECK(phase_joint_pdf_null_general({th, 2.0 * th, 0.1}, g3) ==
              doctest::Approx(1.0 / (8.0 * pi * pi * pi)).epsilon(1e-6));

    // n = 3 normalization; the density depends on phase differences only, so
    // integrate two differences and multiply by 2 pi.
    Eigen::MatrixXcd gg = Eigen::MatrixXcd::Zero(3, 3);
    gg(0, 0) = 1.0;
    gg(1, 1) = 1.2;
    gg(2, 2) = 0.9;
    gg(0, 1) = cplx(0.3, 0.2);
    gg(1, 0) = std::conj(gg(0, 1));
    gg(0, 2) = cplx(-0.1, 0.25);
    gg(2, 0) = std::conj(gg(0, 2));
    gg(1, 2) = cplx(0.2, -0.15);
    gg(2, 1) = std::conj(gg(1, 2));
    int nn = 48;
    double total = 0.0;
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j)
            total += phase_joint_pdf_null_general(
                {0.0, two_pi * i / nn, two_pi * j / nn}, gg);
    total *= two_pi * sqr(two_pi / nn);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-4));

    CHECK_THROWS_AS(phase_joint_pdf_null_general({0.1}, Eigen::MatrixXcd::Identity(1, 1)),
                    unsupported_error);
}

TEST_CASE("joint magnitude-phase pdf at one point") {
    Eigen::MatrixXcd g1(1, 1);
    g1 << 0.8;

    // Null case factorizes exactly.
    PointContext null_ctx({cplx(0.0)}, g1);
    for (double r : {0.3, 1.0})
        for (double th : {0.0, 2.5})
            CHECK(mag_phase_joint_pdf(r, th, null_ctx) ==
                  doctest::Approx(rice_pdf(r, 0.0, 0.4) / two_pi).epsilon(1e-12));

    cplx wf(0.7, -0.9);
    PointContext ctx({wf}, g1);

    // Marginalizing theta recovers the Rice law.
    for (double r : {0.4, 1.1, 2.0}) {
        auto f = [&](double th) { return mag_phase_joint_pdf(r, th, ctx); };
        double marg = periodic_trapezoid(f, 1024);
        CHECK(marg == doctest::Approx(rice_pdf(r, std::abs(wf), 0.4)).epsilon(1e-8));
    }

    // Marginalizing r recovers the phase marginal.
    double q = std::norm(wf) / 0.8;
    for (double th : {0.2, 1.7, 4.4}) {
        auto f = [&](double r) { return mag_phase_joint_pdf(r, th, ctx); };
        double marg = gl_integrate(f, linear_panels(0.0, 9.0, 64), 16);
        CHECK(marg == doctest::Approx(phase_marginal_pdf(th, q, std::arg(wf))).epsilon(1e-8));
    }

    // Rotation equivariance: e^{i phi} W_f shifts the phase profile, leaves
    // magnitude laws unchanged.
    double phi = 1.1;
    PointContext rot({wf * std::exp(cplx(0.0, phi))}, g1);
    for (double r : {0.5, 1.3}) {
        auto f0 = [&](double th) { return mag_phase_joint_pdf(r, th, ctx); };
        auto f1 = [&](double th) { return mag_phase_joint_pdf(r, th, rot); };
        CHECK(periodic_trapezoid(f0, 512) == doctest::Approx(periodic_trapezoid(f1, 512)));
        CHECK(mag_phase_joint_pdf(r, 0.9, ctx) ==
              doctest::Approx(mag_phase_joint_pdf(r, 0.9 + phi, rot)).epsilon(1e-12));
    }
}
