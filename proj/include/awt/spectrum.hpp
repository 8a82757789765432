#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "awt/common.hpp"
#include "awt/wavelet.hpp"

namespace awt {

struct TimeScalePoint {
    double t = 0.0;
    double s = 1.0;
};

// Spectral measure F of a stationary real Gaussian process: symmetric,
// nonnegative. WhiteImproper (Lebesgue times a level) has infinite mass; it
// is accepted by the covariance-matrix integrals, which converge through the
// wavelet decay, and rejected by path synthesis.
class SpectralMeasure {
  public:
    enum class Kind { white_bandlimited, density, white_improper };

    static SpectralMeasure white_bandlimited(double cutoff, double level);
    // Tabulated density on lambda >= 0, extended evenly to the negative axis
    // and linearly interpolated between nodes; zero outside the table.
    static SpectralMeasure density(std::vector<double> lambda, std::vector<double> values);
    static SpectralMeasure white_improper(double level);

    Kind kind() const { return kind_; }
    bool finite_mass() const { return kind_ != Kind::white_improper; }

    // F(R) = C_Phi(0); throws for WhiteImproper.
    double total_mass() const;

    // Density at a point (defined for all kinds; improper returns the level).
    double density_at(double lambda) const;

    // Exact mass of the interval [a, b].
    double mass(double a, double b) const;

    // Largest |lambda| carrying mass; +inf for improper.
    double support_radius() const;

    // Interior break points of the density in (a, b) (tabulation nodes and
    // cutoffs); quadrature panels align with these.
    void append_breakpoints(double a, double b, std::vector<double>& out) const;

    double level() const { return level_; }

  private:
    Kind kind_ = Kind::white_bandlimited;
    double cutoff_ = 1.0;
    double level_ = 1.0;
    std::vector<double> tab_lambda_;
    std::vector<double> tab_values_;
};

// C_Phi(t) = integral of e^{i lambda t} F(d lambda); real by symmetry.
// Piecewise-linear densities integrate in closed form per segment.
double covariance_from_spectrum(const SpectralMeasure& F, double t);

struct RealMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;  // row-major
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Stationary Gaussian sample paths on the uniform grid t0 + dt*j by the
// spectral representation: independent complex Gaussian increments with the
// bin masses of F on the grid lambda_k = 2 pi k/(n_t dt), conjugate-filled so
// paths are real. Path i draws from substream (seed, i); output is identical
// for a given (seed, shape) regardless of the worker count.
RealMatrix synthesize_paths(const SpectralMeasure& F, double t0, double dt,
                            std::size_t n_times, std::size_t n_paths,
                            std::uint64_t seed, int n_threads = 1);

// Covariance matrix of AWT samples at n time-scale points, plus the
// pseudo-covariance.
struct GammaMatrix {
    std::vector<TimeScalePoint> points;
    Eigen::MatrixXcd gamma;   // Hermitian, positive semidefinite
    Eigen::MatrixXcd pseudo;  // ~0 for analytic wavelets
    double eig_min = 0.0;
    double eig_max = 0.0;
    double rcond() const { return eig_max > 0.0 ? eig_min / eig_max : 0.0; }
};

// Frequency response pairing
//   integral over R of e^{i dt lambda} conj(g1(s1 lambda)) g2(s2 lambda) F(dlambda)
// by composite Gauss-Legendre with doubling refinement to rel_tol. lambda_max
// truncates the wavelet tails; g1/g2 need not vanish on the negative axis.
cplx spectral_pairing(const SpectralMeasure& F, const std::function<cplx(double)>& g1,
                      const std::function<cplx(double)>& g2, double dt, double s1,
                      double s2, double lambda_max, double rel_tol = 1e-9);

GammaMatrix compute_gamma(const SpectralMeasure& F, const WaveletSpec& spec,
                          const std::vector<TimeScalePoint>& points);

// Max entrywise |pseudo|.
double pseudo_cov_norm(const GammaMatrix& g);

// Covariance implied by the discrete synthesis grid (n_times, dt): the exact
// second moment of awt_forward applied to synthesize_paths output. Used by
// Monte Carlo comparisons so analytic formulas are fed the covariance of the
// process actually simulated.
GammaMatrix discrete_gamma(const SpectralMeasure& F, const WaveletSpec& spec,
                           const std::vector<TimeScalePoint>& points, double t0,
                           double dt, std::size_t n_times);

}  // namespace awt
