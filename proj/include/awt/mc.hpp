#pragma once

#include <functional>
#include <vector>

#include "awt/common.hpp"
#include "awt/spectrum.hpp"
#include "awt/transform.hpp"

namespace awt {
namespace mc {

// Grid position of an observation point.
struct Probe {
    std::size_t scale_index = 0;
    std::size_t time_index = 0;
};

// Seeded collection of AWT samples W_Y at the probes: per path the noise is
// synthesized on the grid, Y = f + Phi transformed, and the probes sampled.
// W_f is computed once noise-free. Reproducible: (seed, config) gives
// bit-identical samples regardless of the worker count.
struct Ensemble {
    std::uint64_t seed = 0;
    std::size_t n_paths = 0;
    std::vector<TimeScalePoint> points;
    std::vector<cplx> clean;    // W_f at probes
    std::vector<cplx> samples;  // n_paths x n_probes, row-major

    cplx at(std::size_t path, std::size_t probe) const {
        return samples[path * points.size() + probe];
    }
    std::size_t n_probes() const { return points.size(); }

    std::vector<double> magnitudes(std::size_t probe) const;
    std::vector<double> phases(std::size_t probe) const;
};

// signal may be empty (the null case f = 0); otherwise length grid.n_t.
Ensemble run_ensemble(const std::vector<double>& signal, const SpectralMeasure& F,
                      const WaveletSpec& spec, const TimeScaleGrid& grid,
                      const std::vector<Probe>& probes, std::size_t n_paths,
                      std::uint64_t seed, int n_threads = 1);

// Two-sided Kolmogorov-Smirnov statistic against an analytic CDF.
double ks_statistic(const std::function<double(double)>& cdf,
                    std::vector<double> samples);

// 99% one-sample KS line: statistics below 1.63/sqrt(n) are unremarkable.
inline double ks_line_99(std::size_t n) {
    return 1.63 / std::sqrt(static_cast<double>(n));
}

// CDF of a pdf by cached cumulative quadrature on [lo, hi].
class QuadratureCdf {
  public:
    QuadratureCdf(const std::function<double(double)>& pdf, double lo, double hi,
                  int nodes = 16384);
    double operator()(double x) const;

  private:
    double lo_, hi_, step_;
    std::vector<double> cum_;
};

struct CircStat {
    cplx mean;
    double se = 0.0;  // sqrt((var_re + var_im)/n)
};
// Sample mean of e^{i(th1 - th2)} / e^{i(th1 + th2)}.
CircStat empirical_circular_cov(const std::vector<double>& th1,
                                const std::vector<double>& th2);
CircStat empirical_circular_sum(const std::vector<double>& th1,
                                const std::vector<double>& th2);

struct MomentStat {
    double value = 0.0;
    double se = 0.0;
};
MomentStat empirical_mean(const std::vector<double>& x);
MomentStat empirical_cov(const std::vector<double>& x, const std::vector<double>& y);
// Pearson correlation with the influence-function standard error.
MomentStat empirical_corr(const std::vector<double>& x, const std::vector<double>& y);

// Chi-square independence test on an 8x8 contingency table: magnitude
// quantile bins x uniform phase bins. Empty rows/columns are merged away.
struct Chi2Result {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};
Chi2Result independence_test(const std::vector<double>& magnitudes,
                             const std::vector<double>& phases);

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};
WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double z);

// Frequency of {|W_Y(ridge)| < (1-delta) |W_Y(other)|} per probe pair.
struct MisidFrequency {
    double freq = 0.0;
    WilsonInterval wilson;
    std::size_t n = 0;
};
MisidFrequency ridge_misid_frequency(const Ensemble& ens, std::size_t ridge_probe,
                                     std::size_t other_probe, double delta,
                                     double z = 4.0);

struct Histogram {
    std::vector<double> edges;  // size bins + 1
    std::vector<double> mass;   // sums to 1
};
Histogram histogram_fd(std::vector<double> samples);  // Freedman-Diaconis
Histogram histogram_phase(const std::vector<double>& samples, int bins = 64);

}  // namespace mc
}  // namespace awt
