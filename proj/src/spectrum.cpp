#include "awt/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "awt/fft.hpp"
#include "awt/quadrature.hpp"
#include "awt/rng.hpp"

namespace awt {

SpectralMeasure SpectralMeasure::white_bandlimited(double cutoff, double level) {
    if (!(cutoff > 0.0)) throw validation_error("spectral measure: cutoff must be > 0");
    if (!(level > 0.0)) throw validation_error("spectral measure: level must be > 0");
    SpectralMeasure f;
    f.kind_ = Kind::white_bandlimited;
    f.cutoff_ = cutoff;
    f.level_ = level;
    return f;
}

SpectralMeasure SpectralMeasure::density(std::vector<double> lambda,
                                         std::vector<double> values) {
    if (lambda.size() != values.size() || lambda.size() < 2)
        throw validation_error("spectral density: need matching tables, >= 2 nodes");
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (!(lambda[i] >= 0.0) || !std::isfinite(lambda[i]))
            throw validation_error("spectral density: lambda must be finite and >= 0");
        if (i > 0 && !(lambda[i] > lambda[i - 1]))
            throw validation_error("spectral density: lambda must be strictly increasing");
        if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
            throw validation_error("spectral density: values must be finite and >= 0");
    }
    SpectralMeasure f;
    f.kind_ = Kind::density;
    f.tab_lambda_ = std::move(lambda);
    f.tab_values_ = std::move(values);
    f.cutoff_ = f.tab_lambda_.back();
    return f;
}

SpectralMeasure SpectralMeasure::white_improper(double level) {
    if (!(level > 0.0)) throw validation_error("spectral measure: level must be > 0");
    SpectralMeasure f;
    f.kind_ = Kind::white_improper;
    f.level_ = level;
    f.cutoff_ = std::numeric_limits<double>::infinity();
    return f;
}

double SpectralMeasure::density_at(double lambda) const {
    double al = std::abs(lambda);
    switch (kind_) {
        case Kind::white_improper:
            return level_;
        case Kind::white_bandlimited:
            return al <= cutoff_ ? level_ : 0.0;
        case Kind::density: {
            if (al < tab_lambda_.front() || al > tab_lambda_.back()) return 0.0;
            auto it = std::upper_bound(tab_lambda_.begin(), tab_lambda_.end(), al);
            if (it == tab_lambda_.end()) return tab_values_.back();
            std::size_t hi = static_cast<std::size_t>(it - tab_lambda_.begin());
            if (hi == 0) return tab_values_.front();
            std::size_t lo = hi - 1;
            double t = (al - tab_lambda_[lo]) / (tab_lambda_[hi] - tab_lambda_[lo]);
            return tab_values_[lo] * (1.0 - t) + tab_values_[hi] * t;
        }
    }
    return 0.0;
}

double SpectralMeasure::total_mass() const {
    switch (kind_) {
        case Kind::white_improper:
            throw unsupported_error("white improper measure has infinite mass");
        case Kind::white_bandlimited:
            return 2.0 * cutoff_ * level_;
        case Kind::density: {
            // Even extension; the table covers lambda >= 0 only.
            double half = 0.0;
            for (std::size_t i = 0; i + 1 < tab_lambda_.size(); ++i)
                half += 0.5 * (tab_values_[i] + tab_values_[i + 1]) *
                        (tab_lambda_[i + 1] - tab_lambda_[i]);
            return 2.0 * half;
        }
    }
    return 0.0;
}

double SpectralMeasure::mass(double a, double b) const {
    if (b <= a) return 0.0;
    if (kind_ == Kind::white_improper) return level_ * (b - a);
    if (kind_ == Kind::white_bandlimited) {
        double lo = std::max(a, -cutoff_), hi = std::min(b, cutoff_);
        return hi > lo ? level_ * (hi - lo) : 0.0;
    }
    // Piecewise-linear density of |lambda|: split at 0, map to positive axis.
    auto positive_mass = [this](double lo, double hi) {
        lo = std::max(lo, tab_lambda_.front());
        hi = std::min(hi, tab_lambda_.back());
        if (hi <= lo) return 0.0;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < tab_lambda_.size(); ++i) {
            double l0 = tab_lambda_[i], l1 = tab_lambda_[i + 1];
            double x0 = std::max(lo, l0), x1 = std::min(hi, l1);
            if (x1 <= x0) continue;
            double m = (tab_values_[i + 1] - tab_values_[i]) / (l1 - l0);
            auto val = [&](double x) { return tab_values_[i] + m * (x - l0); };
            acc += 0.5 * (val(x0) + val(x1)) * (x1 - x0);
        }
        return acc;
    };
    double total = 0.0;
    if (b > 0.0) total += positive_mass(std::max(a, 0.0), b);
    if (a < 0.0) total += positive_mass(std::max(-b, 0.0), -a);
    return total;
}

double SpectralMeasure::support_radius() const {
    return kind_ == Kind::white_improper ? std::numeric_limits<double>::infinity()
                                         : cutoff_;
}

void SpectralMeasure::append_breakpoints(double a, double b,
                                         std::vector<double>& out) const {
    if (kind_ == Kind::white_bandlimited) {
        for (double c : {-cutoff_, cutoff_})
            if (c > a && c < b) out.push_back(c);
    } else if (kind_ == Kind::density) {
        for (double l : tab_lambda_) {
            if (l > a && l < b) out.push_back(l);
            if (-l > a && -l < b) out.push_back(-l);
        }
    }
}

namespace {

// int_{l0}^{l1} (linear density) cos(t lambda) dlambda in closed form, with
// product-form differences so small t has no cancellation.
double segment_cos_integral(double f0, double f1, double l0, double l1, double t) {
    double half_len = 0.5 * (l1 - l0);
    if (t == 0.0) return (f0 + f1) * half_len;
    double center = 0.5 * (l0 + l1);
    double slope = (f1 - f0) / (l1 - l0);
    double sin_half = std::sin(t * half_len);
    // (f1 sin(t l1) - f0 sin(t l0)) / t
    double term1 =
        (f1 * 2.0 * std::cos(t * center) * sin_half + (f1 - f0) * std::sin(t * l0)) / t;
    // slope/t^2 * (cos(t l1) - cos(t l0))
    double term2 = -2.0 * slope * std::sin(t * center) * sin_half / (t * t);
    return term1 + term2;
}

}  // namespace

double covariance_from_spectrum(const SpectralMeasure& F, double t) {
    if (!F.finite_mass())
        throw unsupported_error("covariance_from_spectrum: improper measure");
    if (F.kind() == SpectralMeasure::Kind::white_bandlimited) {
        double cutoff = F.support_radius();
        if (t == 0.0) return 2.0 * F.level() * cutoff;
        return 2.0 * F.level() * std::sin(cutoff * t) / t;
    }
    // C(t) = 2 int_0^inf f(lambda) cos(lambda t) dlambda, segment by segment.
    double acc = 0.0;
    std::vector<double> nodes{0.0};
    F.append_breakpoints(0.0, F.support_radius() * (1.0 + 1e-12), nodes);
    nodes.push_back(F.support_radius());
    std::sort(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        double l0 = nodes[i], l1 = nodes[i + 1];
        if (l1 <= l0) continue;
        // Interior limits: the density is linear on the open segment but may
        // jump at its ends, so extrapolate from two interior samples.
        double h = l1 - l0;
        double fa = F.density_at(l0 + 0.25 * h);
        double fb = F.density_at(l1 - 0.25 * h);
        double slope = (fb - fa) / (0.5 * h);
        double f0 = fa - slope * 0.25 * h;
        double f1 = fb + slope * 0.25 * h;
        acc += segment_cos_integral(f0, f1, l0, l1, t);
    }
    return 2.0 * acc;
}

RealMatrix synthesize_paths(const SpectralMeasure& F, double t0, double dt,
                            std::size_t n_times, std::size_t n_paths,
                            std::uint64_t seed, int n_threads) {
    if (!F.finite_mass())
        throw unsupported_error("synthesize_paths: improper measure has infinite variance");
    if (n_paths == 0) throw domain_error("synthesize_paths: n_paths must be > 0");
    if (!(dt > 0.0) || n_times < 2) throw domain_error("synthesize_paths: bad grid");

    double nyquist = pi / dt;
    if (F.support_radius() > nyquist * (1.0 + 1e-12))
        std::cerr << "warning: spectral support exceeds the Nyquist band " << nyquist
                  << "; frequencies beyond it are dropped\n";

    std::size_t n_half = n_times / 2;
    double dlambda = two_pi / (static_cast<double>(n_times) * dt);

    // Bin masses: k = 0 symmetric around zero, k >= 1 one-sided (the mirror
    // bin is carried by the conjugate term).
    std::vector<double> sigma(n_half + 1);
    sigma[0] = std::sqrt(F.mass(-0.5 * dlambda, 0.5 * dlambda));
    for (std::size_t k = 1; k <= n_half; ++k) {
        double lk = k * dlambda;
        double lo = lk - 0.5 * dlambda;
        double hi = std::min(lk + 0.5 * dlambda, nyquist);
        sigma[k] = std::sqrt(F.mass(lo, hi));
    }

    RealMatrix out;
    out.rows = n_paths;
    out.cols = n_times;
    out.data.resize(n_paths * n_times);

    parallel_for(n_paths, n_threads, [&](std::size_t p) {
        Rng rng = Rng::substream(seed, p);
        std::vector<cplx> spec(n_times, cplx(0.0));
        spec[0] = sigma[0] * rng.normal();
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (std::size_t k = 1; k <= n_half; ++k) {
            double xi = rng.normal();
            double eta = rng.normal();
            cplx z = sigma[k] * inv_sqrt2 * cplx(xi, eta);
            cplx v = z * std::exp(cplx(0.0, k * dlambda * t0));
            spec[k] += v;
            spec[(n_times - k) % n_times] += std::conj(v);
        }
        fft_inplace(spec, +1);  // unnormalized inverse: sum_k S_k e^{+2pi i jk/n}
        for (std::size_t j = 0; j < n_times; ++j) out.at(p, j) = spec[j].real();
    });
    return out;
}

namespace {

struct PairingIntegrand {
    const SpectralMeasure* F;
    const std::function<cplx(double)>* g1;
    const std::function<cplx(double)>* g2;
    double dt, s1, s2;
    cplx operator()(double lambda) const {
        double rho = F->density_at(lambda);
        if (rho == 0.0) return cplx(0.0);
        cplx a = std::conj((*g1)(s1 * lambda));
        if (a == cplx(0.0)) return cplx(0.0);
        cplx b = (*g2)(s2 * lambda);
        if (b == cplx(0.0)) return cplx(0.0);
        return std::exp(cplx(0.0, dt * lambda)) * a * b * rho;
    }
};

std::vector<double> refine_bounds(const std::vector<double>& base, int splits) {
    std::vector<double> out;
    out.reserve((base.size() - 1) * (1u << splits) + 1);
    for (std::size_t i = 0; i + 1 < base.size(); ++i) {
        int parts = 1 << splits;
        for (int j = 0; j < parts; ++j)
            out.push_back(base[i] + (base[i + 1] - base[i]) * j / parts);
    }
    out.push_back(base.back());
    return out;
}

}  // namespace

cplx spectral_pairing(const SpectralMeasure& F, const std::function<cplx(double)>& g1,
                      const std::function<cplx(double)>& g2, double dt, double s1,
                      double s2, double lambda_max, double rel_tol) {
    lambda_max = std::min(lambda_max, F.support_radius());
    PairingIntegrand h{&F, &g1, &g2, dt, s1, s2};

    // Log-spaced panels toward zero on both half-lines, plus density/cutoff
    // break points, plus enough panels to resolve the e^{i dt lambda} factor.
    double lmin = lambda_max * 1e-8;
    std::vector<double> base;
    int n_log = 24;
    int n_osc = static_cast<int>(std::abs(dt) * lambda_max / pi);
    auto logp = log_panels(lmin, lambda_max, n_log);
    for (double v : logp) base.push_back(v);
    for (double v : logp) base.push_back(-v);
    base.push_back(0.0);
    if (n_osc > 1) {
        for (int i = 1; i < std::min(n_osc, 4096); ++i) {
            double l = lambda_max * i / n_osc;
            base.push_back(l);
            base.push_back(-l);
        }
    }
    F.append_breakpoints(-lambda_max, lambda_max, base);
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());

    cplx prev = gl_integrate(h, base, 16);
    // Oscillatory integrals can cancel almost completely; accuracy is then
    // bounded by roundoff on the uncancelled mass, so the tolerance is taken
    // relative to max(|I|, integral of |h|).
    auto abs_h = [&h](double l) { return std::abs(h(l)); };
    double ref = gl_integrate(abs_h, base, 16);
    double achieved = 1.0;
    for (int d = 1; d <= 8; ++d) {
        cplx cur = gl_integrate(h, refine_bounds(base, d), 16);
        double scale = std::max({std::abs(cur), std::abs(prev), ref, 1e-30});
        achieved = std::abs(cur - prev) / scale;
        prev = cur;
        if (achieved < rel_tol) return cur;
    }
    throw numeric_error("spectral_pairing: quadrature did not reach tolerance", achieved);
}

namespace {

// Wraps eval so the analytic wavelet reads exactly zero off (0, inf).
std::function<cplx(double)> psi_fn(const WaveletSpec& spec) {
    return [&spec](double l) { return spec.psi_hat(l); };
}

}  // namespace

GammaMatrix compute_gamma(const SpectralMeasure& F, const WaveletSpec& spec,
                          const std::vector<TimeScalePoint>& points) {
    if (points.empty()) throw domain_error("compute_gamma: need at least one point");
    for (auto& p : points)
        if (!(p.s > 0.0)) throw domain_error("compute_gamma: scales must be > 0");

    const std::size_t n = points.size();
    GammaMatrix g;
    g.points = points;
    g.gamma = Eigen::MatrixXcd::Zero(n, n);
    g.pseudo = Eigen::MatrixXcd::Zero(n, n);

    double psi_tail = spec.decay_lambda(1e-20);
    auto g1 = psi_fn(spec);
    auto neg = [&spec](double l) { return std::conj(spec.psi_hat(-l)); };
    std::function<cplx(double)> g2_conj_neg = neg;

    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            double s1 = points[a].s, s2 = points[b].s;
            double lam_max = std::min(psi_tail / s1, psi_tail / s2);
            double dtab = points[a].t - points[b].t;
            cplx entry = std::sqrt(s1 * s2) *
                         spectral_pairing(F, g1, g1, dtab, s1, s2, lam_max, 1e-9);
            // conj(psi_hat(-s2 lambda)) pairs the mirrored support; zero for
            // analytic wavelets, kept for the diagnostic contract.
            cplx pentry = std::sqrt(s1 * s2) *
                          spectral_pairing(F, g1, g2_conj_neg, dtab, s1, s2,
                                           std::max(lam_max, psi_tail / s2), 1e-9);
            if (a == b) entry = cplx(entry.real(), 0.0);
            g.gamma(a, b) = entry;
            g.gamma(b, a) = std::conj(entry);
            g.pseudo(a, b) = pentry;
            g.pseudo(b, a) = pentry;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.gamma);
    g.eig_min = es.eigenvalues().minCoeff();
    g.eig_max = es.eigenvalues().maxCoeff();
    double trace = g.gamma.real().trace();
    if (g.eig_min < -1e-10 * trace)
        throw numeric_error("compute_gamma: covariance not positive semidefinite",
                            g.eig_min);
    return g;
}

double pseudo_cov_norm(const GammaMatrix& g) {
    return g.pseudo.cwiseAbs().maxCoeff();
}

GammaMatrix discrete_gamma(const SpectralMeasure& F, const WaveletSpec& spec,
                           const std::vector<TimeScalePoint>& points, double /*t0*/,
                           double dt, std::size_t n_times) {
    if (!F.finite_mass())
        throw unsupported_error("discrete_gamma: improper measure");
    const std::size_t n = points.size();
    std::size_t n_half = n_times / 2;
    double dlambda = two_pi / (static_cast<double>(n_times) * dt);
    double nyquist = pi / dt;

    GammaMatrix g;
    g.points = points;
    g.gamma = Eigen::MatrixXcd::Zero(n, n);
    g.pseudo = Eigen::MatrixXcd::Zero(n, n);

    for (std::size_t k = 1; k <= n_half; ++k) {
        double lk = k * dlambda;
        double m = F.mass(lk - 0.5 * dlambda, std::min(lk + 0.5 * dlambda, nyquist));
        if (m == 0.0) continue;
        if (2 * k == n_times) m *= 2.0;  // Nyquist bin is real-valued
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a; b < n; ++b) {
                cplx v = std::sqrt(points[a].s * points[b].s) *
                         std::conj(spec.psi_hat(points[a].s * lk)) *
                         spec.psi_hat(points[b].s * lk) *
                         std::exp(cplx(0.0, (points[a].t - points[b].t) * lk)) * m;
                g.gamma(a, b) += v;
            }
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        g.gamma(a, a) = cplx(g.gamma(a, a).real(), 0.0);
        for (std::size_t b = a + 1; b < n; ++b) g.gamma(b, a) = std::conj(g.gamma(a, b));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.gamma);
    g.eig_min = es.eigenvalues().minCoeff();
    g.eig_max = es.eigenvalues().maxCoeff();
    return g;
}

}  // namespace awt
