#include "awt/mc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "awt/rng.hpp"
#include "awt/specfun.hpp"

namespace awt {
namespace mc {

std::vector<double> Ensemble::magnitudes(std::size_t probe) const {
    std::vector<double> out(n_paths);
    for (std::size_t p = 0; p < n_paths; ++p) out[p] = std::abs(at(p, probe));
    return out;
}

std::vector<double> Ensemble::phases(std::size_t probe) const {
    std::vector<double> out(n_paths);
    for (std::size_t p = 0; p < n_paths; ++p) out[p] = phase_of(at(p, probe));
    return out;
}

Ensemble run_ensemble(const std::vector<double>& signal, const SpectralMeasure& F,
                      const WaveletSpec& spec, const TimeScaleGrid& grid,
                      const std::vector<Probe>& probes, std::size_t n_paths,
                      std::uint64_t seed, int n_threads) {
    grid.validate();
    if (!F.finite_mass())
        throw unsupported_error("run_ensemble: improper spectral measure");
    if (n_paths == 0) throw domain_error("run_ensemble: n_paths must be > 0");
    if (probes.empty()) throw domain_error("run_ensemble: need at least one probe");
    for (const auto& p : probes)
        if (p.scale_index >= grid.scales.size() || p.time_index >= grid.n_t)
            throw domain_error("run_ensemble: probe off the grid");
    if (!signal.empty() && signal.size() != grid.n_t)
        throw domain_error("run_ensemble: signal length does not match the grid");

    const std::size_t n_t = grid.n_t;
    const std::size_t n_half = n_t / 2;
    const std::size_t n_probes = probes.size();
    const double dlambda = two_pi / (static_cast<double>(n_t) * grid.dt);
    const double nyquist = pi / grid.dt;

    Ensemble ens;
    ens.seed = seed;
    ens.n_paths = n_paths;
    for (const auto& p : probes)
        ens.points.push_back({grid.time(p.time_index), grid.scales[p.scale_index]});

    // Clean AWT once, on the distinct probe scales only (the transform is
    // linear, so W_Y(probe) = W_f(probe) + W_Phi(probe)).
    std::vector<double> distinct;
    for (const auto& p : probes) distinct.push_back(grid.scales[p.scale_index]);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    auto scale_rank = [&](double s) {
        return static_cast<std::size_t>(
            std::lower_bound(distinct.begin(), distinct.end(), s) - distinct.begin());
    };
    ens.clean.assign(n_probes, cplx(0.0));
    if (!signal.empty()) {
        auto Wf = awt_forward(signal, grid.dt, spec, distinct, grid.t0);
        for (std::size_t p = 0; p < n_probes; ++p)
            ens.clean[p] =
                Wf.at(scale_rank(grid.scales[probes[p].scale_index]), probes[p].time_index);
    }

    // Bin amplitudes of the spectral increments (same convention as
    // synthesize_paths so a (seed, grid) pair reproduces the same noise).
    std::vector<double> sigma(n_half + 1);
    sigma[0] = std::sqrt(F.mass(-0.5 * dlambda, 0.5 * dlambda));
    for (std::size_t k = 1; k <= n_half; ++k) {
        double lk = k * dlambda;
        sigma[k] = std::sqrt(F.mass(lk - 0.5 * dlambda, std::min(lk + 0.5 * dlambda, nyquist)));
    }

    // Per-probe response: W_Phi(probe) = sum_k coef[k] S_k with S_k the bin
    // increment phased to the grid origin.
    std::vector<std::vector<cplx>> coef(n_probes, std::vector<cplx>(n_half + 1, 0.0));
    for (std::size_t p = 0; p < n_probes; ++p) {
        double s = grid.scales[probes[p].scale_index];
        double root_s = std::sqrt(s);
        std::size_t j = probes[p].time_index;
        for (std::size_t k = 1; k <= n_half; ++k) {
            cplx resp = root_s * std::conj(spec.psi_hat(s * k * dlambda));
            cplx ph = std::exp(cplx(0.0, two_pi * static_cast<double>(j * k % n_t) /
                                             static_cast<double>(n_t)));
            coef[p][k] = resp * ph;
        }
    }

    ens.samples.assign(n_paths * n_probes, cplx(0.0));
    const bool even = (n_t % 2 == 0);
    parallel_for(n_paths, n_threads, [&](std::size_t path) {
        Rng rng = Rng::substream(seed, path);
        std::vector<cplx> s_k(n_half + 1, 0.0);
        double z0 = sigma[0] * rng.normal();
        (void)z0;  // DC is drawn for stream parity with synthesize_paths; the
                   // transform zeroes that bin.
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (std::size_t k = 1; k <= n_half; ++k) {
            double xi = rng.normal();
            double eta = rng.normal();
            cplx z = sigma[k] * inv_sqrt2 * cplx(xi, eta);
            cplx v = z * std::exp(cplx(0.0, k * dlambda * grid.t0));
            // The Nyquist bin of an even grid folds onto itself.
            s_k[k] = (even && 2 * k == n_t) ? cplx(2.0 * v.real(), 0.0) : v;
        }
        for (std::size_t p = 0; p < n_probes; ++p) {
            cplx acc = 0.0;
            for (std::size_t k = 1; k <= n_half; ++k) acc += coef[p][k] * s_k[k];
            ens.samples[path * n_probes + p] = ens.clean[p] + acc;
        }
    });
    return ens;
}

double ks_statistic(const std::function<double(double)>& cdf,
                    std::vector<double> samples) {
    if (samples.size() < 100)
        throw domain_error("ks_statistic: need at least 100 samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = std::clamp(cdf(samples[i]), 0.0, 1.0);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    return d;
}

QuadratureCdf::QuadratureCdf(const std::function<double(double)>& pdf, double lo,
                             double hi, int nodes)
    : lo_(lo), hi_(hi) {
    if (!(hi > lo) || nodes < 16) throw domain_error("QuadratureCdf: bad range");
    step_ = (hi - lo) / (nodes - 1);
    cum_.resize(nodes);
    cum_[0] = 0.0;
    double prev = pdf(lo);
    for (int i = 1; i < nodes; ++i) {
        double cur = pdf(lo + i * step_);
        cum_[i] = cum_[i - 1] + 0.5 * (prev + cur) * step_;
        prev = cur;
    }
}

double QuadratureCdf::operator()(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return cum_.back();
    double pos = (x - lo_) / step_;
    auto i = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(i);
    return cum_[i] * (1.0 - frac) + cum_[i + 1] * frac;
}

namespace {

CircStat circ_mean(const std::vector<double>& th1, const std::vector<double>& th2,
                   double sign) {
    if (th1.size() != th2.size() || th1.empty())
        throw domain_error("circular covariance: length mismatch");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < th1.size(); ++i)
        acc += std::exp(cplx(0.0, th1[i] + sign * th2[i]));
    cplx mean = acc / static_cast<double>(th1.size());
    double vr = 0.0, vi = 0.0;
    for (std::size_t i = 0; i < th1.size(); ++i) {
        cplx e = std::exp(cplx(0.0, th1[i] + sign * th2[i])) - mean;
        vr += sqr(e.real());
        vi += sqr(e.imag());
    }
    double n = static_cast<double>(th1.size());
    CircStat out;
    out.mean = mean;
    out.se = std::sqrt((vr + vi) / n / n);
    return out;
}

}  // namespace

CircStat empirical_circular_cov(const std::vector<double>& th1,
                                const std::vector<double>& th2) {
    return circ_mean(th1, th2, -1.0);
}

CircStat empirical_circular_sum(const std::vector<double>& th1,
                                const std::vector<double>& th2) {
    return circ_mean(th1, th2, +1.0);
}

MomentStat empirical_mean(const std::vector<double>& x) {
    if (x.empty()) throw domain_error("empirical_mean: empty sample");
    double m = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    double v = 0.0;
    for (double xi : x) v += sqr(xi - m);
    v /= x.size();
    return {m, std::sqrt(v / x.size())};
}

MomentStat empirical_cov(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty())
        throw domain_error("empirical_cov: length mismatch");
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
    double c = 0.0, v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) c += (x[i] - mx) * (y[i] - my);
    c /= x.size();
    for (std::size_t i = 0; i < x.size(); ++i) v += sqr((x[i] - mx) * (y[i] - my) - c);
    v /= x.size();
    return {c, std::sqrt(v / x.size())};
}

MomentStat empirical_corr(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 4)
        throw domain_error("empirical_corr: need matched samples");
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += sqr(x[i] - mx);
        syy += sqr(y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    double n = static_cast<double>(x.size());
    sxx /= n;
    syy /= n;
    sxy /= n;
    double r = sxy / std::sqrt(sxx * syy);
    // Influence function of Pearson correlation: psi_i = u v - r (u^2+v^2)/2
    // on standardized coordinates.
    double var_if = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double u = (x[i] - mx) / std::sqrt(sxx);
        double v = (y[i] - my) / std::sqrt(syy);
        var_if += sqr(u * v - 0.5 * r * (u * u + v * v));
    }
    var_if /= n;
    return {r, std::sqrt(var_if / n)};
}

Chi2Result independence_test(const std::vector<double>& magnitudes,
                             const std::vector<double>& phases) {
    const std::size_t n = magnitudes.size();
    if (n != phases.size() || n < 64)
        throw domain_error("independence_test: need matched samples (>= 64)");
    const int bins = 8;

    std::vector<double> sorted(magnitudes);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> edges(bins - 1);
    for (int i = 1; i < bins; ++i) edges[i - 1] = sorted[i * n / bins];

    std::vector<std::vector<std::size_t>> count(bins, std::vector<std::size_t>(bins, 0));
    for (std::size_t i = 0; i < n; ++i) {
        int row = static_cast<int>(
            std::upper_bound(edges.begin(), edges.end(), magnitudes[i]) - edges.begin());
        int col = std::clamp(static_cast<int>(phases[i] / (two_pi / bins)), 0, bins - 1);
        ++count[row][col];
    }

    std::vector<std::size_t> row_tot(bins, 0), col_tot(bins, 0);
    for (int r = 0; r < bins; ++r)
        for (int c = 0; c < bins; ++c) {
            row_tot[r] += count[r][c];
            col_tot[c] += count[r][c];
        }
    // Merge away empty rows/columns.
    int rows_used = 0, cols_used = 0;
    for (int r = 0; r < bins; ++r) rows_used += row_tot[r] > 0;
    for (int c = 0; c < bins; ++c) cols_used += col_tot[c] > 0;

    double chi2 = 0.0;
    for (int r = 0; r < bins; ++r) {
        if (row_tot[r] == 0) continue;
        for (int c = 0; c < bins; ++c) {
            if (col_tot[c] == 0) continue;
            double expected = static_cast<double>(row_tot[r]) * col_tot[c] / n;
            chi2 += sqr(count[r][c] - expected) / expected;
        }
    }
    Chi2Result res;
    res.statistic = chi2;
    res.dof = static_cast<double>((rows_used - 1) * (cols_used - 1));
    res.p_value = res.dof > 0 ? specfun::chi2_sf(chi2, res.dof) : 1.0;
    return res;
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double z) {
    if (n == 0) throw domain_error("wilson_interval: empty sample");
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

MisidFrequency ridge_misid_frequency(const Ensemble& ens, std::size_t ridge_probe,
                                     std::size_t other_probe, double delta, double z) {
    if (ridge_probe >= ens.n_probes() || other_probe >= ens.n_probes())
        throw domain_error("ridge_misid_frequency: probe out of range");
    std::size_t hits = 0;
    for (std::size_t p = 0; p < ens.n_paths; ++p)
        if (std::abs(ens.at(p, ridge_probe)) <
            (1.0 - delta) * std::abs(ens.at(p, other_probe)))
            ++hits;
    MisidFrequency out;
    out.n = ens.n_paths;
    out.freq = static_cast<double>(hits) / ens.n_paths;
    out.wilson = wilson_interval(hits, ens.n_paths, z);
    return out;
}

Histogram histogram_fd(std::vector<double> samples) {
    if (samples.size() < 4) throw domain_error("histogram_fd: too few samples");
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    double iqr = samples[3 * n / 4] - samples[n / 4];
    double lo = samples.front(), hi = samples.back();
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    double width = iqr > 0.0 ? 2.0 * iqr / std::cbrt(static_cast<double>(n))
                             : (hi - lo) / 16.0;
    int bins = std::clamp(static_cast<int>(std::ceil((hi - lo) / width)), 1, 512);
    Histogram h;
    h.edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * i / bins;
    h.mass.assign(bins, 0.0);
    for (double x : samples) {
        int b = std::clamp(static_cast<int>((x - lo) / (hi - lo) * bins), 0, bins - 1);
        h.mass[b] += 1.0 / n;
    }
    return h;
}

Histogram histogram_phase(const std::vector<double>& samples, int bins) {
    Histogram h;
    h.edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i) h.edges[i] = two_pi * i / bins;
    h.mass.assign(bins, 0.0);
    for (double x : samples) {
        int b = std::clamp(static_cast<int>(x / (two_pi / bins)), 0, bins - 1);
        h.mass[b] += 1.0 / samples.size();
    }
    return h;
}

}  // namespace mc
}  // namespace awt
