#include "awt/wavelet.hpp"

#include <algorithm>
#include <cmath>

namespace awt {

WaveletSpec WaveletSpec::morse(double beta1, double beta2, double a, bool unit_peak) {
    if (!(beta1 >= 1.0)) throw validation_error("morse: beta1 must be >= 1");
    if (!(beta2 > 0.0)) throw validation_error("morse: beta2 must be > 0");
    if (!(a > 0.0)) throw validation_error("morse: amplitude must be > 0");
    WaveletSpec w;
    w.family_ = Family::morse;
    w.beta1_ = beta1;
    w.beta2_ = beta2;
    w.amp_ = a;
    if (unit_peak) {
        double lp = std::pow(beta1 / beta2, 1.0 / beta2);
        w.amp_ = 1.0 / (std::pow(lp, beta1) * std::exp(-std::pow(lp, beta2)));
    }
    return w;
}

WaveletSpec WaveletSpec::klauder(double alpha, double beta, cplx gamma) {
    if (!(alpha >= 1.0)) throw validation_error("klauder: alpha must be >= 1");
    if (!(gamma.real() > 0.0)) throw validation_error("klauder: Re(gamma) must be > 0");
    WaveletSpec w;
    w.family_ = Family::klauder;
    w.alpha_ = alpha;
    w.kbeta_ = beta;
    w.gamma_ = gamma;
    return w;
}

WaveletSpec WaveletSpec::custom(std::vector<double> lambda, std::vector<cplx> values) {
    if (lambda.size() != values.size())
        throw validation_error("custom wavelet: lambda/value length mismatch");
    if (lambda.size() < 16)
        throw validation_error("custom wavelet: need at least 16 nodes");
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (!(lambda[i] > 0.0) || !std::isfinite(lambda[i]))
            throw validation_error("custom wavelet: lambda must be finite and > 0");
        if (i > 0 && !(lambda[i] > lambda[i - 1]))
            throw validation_error("custom wavelet: lambda must be strictly increasing");
        if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
            throw validation_error("custom wavelet: non-finite value");
    }
    WaveletSpec w;
    w.family_ = Family::custom;
    w.tab_lambda_ = std::move(lambda);
    w.tab_values_ = std::move(values);
    return w;
}

cplx WaveletSpec::psi_hat(double lambda) const {
    if (!std::isfinite(lambda)) throw domain_error("psi_hat: non-finite frequency");
    if (lambda <= 0.0) return 0.0;
    switch (family_) {
        case Family::morse:
            return amp_ * std::pow(lambda, beta1_) * std::exp(-std::pow(lambda, beta2_));
        case Family::klauder: {
            cplx log_val = alpha_ * std::log(lambda) - gamma_ * lambda +
                           cplx(0.0, kbeta_ * std::log(lambda));
            return std::exp(log_val);
        }
        case Family::custom: {
            if (lambda <= tab_lambda_.front() || lambda >= tab_lambda_.back()) {
                if (lambda == tab_lambda_.front()) return tab_values_.front();
                if (lambda == tab_lambda_.back()) return tab_values_.back();
                return 0.0;
            }
            auto it = std::upper_bound(tab_lambda_.begin(), tab_lambda_.end(), lambda);
            std::size_t hi = static_cast<std::size_t>(it - tab_lambda_.begin());
            std::size_t lo = hi - 1;
            double t = (lambda - tab_lambda_[lo]) / (tab_lambda_[hi] - tab_lambda_[lo]);
            return tab_values_[lo] * (1.0 - t) + tab_values_[hi] * t;
        }
    }
    return 0.0;
}

double WaveletSpec::peak_lambda() const {
    switch (family_) {
        case Family::morse:
            return std::pow(beta1_ / beta2_, 1.0 / beta2_);
        case Family::klauder:
            // |psi_hat| = l^alpha e^{-Re(gamma) l}; maximum at alpha / Re(gamma).
            return alpha_ / gamma_.real();
        case Family::custom: {
            std::size_t best = 0;
            double best_mag = -1.0;
            std::vector<double> mags(tab_lambda_.size());
            for (std::size_t i = 0; i < tab_lambda_.size(); ++i) {
                mags[i] = std::abs(tab_values_[i]);
                if (mags[i] > best_mag) {
                    best_mag = mags[i];
                    best = i;
                }
            }
            // Unimodality: no strict local minimum below the global max on
            // either side (tolerance for flat tails).
            double tol = 1e-12 * best_mag;
            for (std::size_t i = 1; i < best; ++i)
                if (mags[i] < mags[i - 1] - tol && mags[i] < best_mag - tol)
                    throw validation_error("custom wavelet: |psi_hat| is not unimodal");
            for (std::size_t i = best + 1; i + 1 < mags.size(); ++i)
                if (mags[i + 1] > mags[i] + tol)
                    throw validation_error("custom wavelet: |psi_hat| is not unimodal");
            return tab_lambda_[best];
        }
    }
    return 1.0;
}

double WaveletSpec::decay_lambda(double rel_floor) const {
    double lp = peak_lambda();
    double peak2 = std::norm(psi_hat(lp));
    if (family_ == Family::custom) return tab_lambda_.back();
    double lambda = lp;
    for (int i = 0; i < 400; ++i) {
        lambda *= 1.25;
        if (std::norm(psi_hat(lambda)) < rel_floor * peak2) return lambda;
    }
    return lambda;
}

DecayReport decay_report(const WaveletSpec& spec, const std::vector<double>& grid) {
    if (grid.size() < 16) throw validation_error("decay_report: grid shorter than 16 points");
    for (double l : grid)
        if (!(l > 0.0)) throw validation_error("decay_report: grid must be positive");

    auto d1 = [&](double l, double h) {
        return (spec.psi_hat(l + h) - spec.psi_hat(l - h)) / (2.0 * h);
    };
    auto d2 = [&](double l, double h) {
        return (spec.psi_hat(l + h) - 2.0 * spec.psi_hat(l) + spec.psi_hat(l - h)) / (h * h);
    };
    auto d3 = [&](double l, double h) {
        return (spec.psi_hat(l + 2.0 * h) - 2.0 * spec.psi_hat(l + h) +
                2.0 * spec.psi_hat(l - h) - spec.psi_hat(l - 2.0 * h)) /
               (2.0 * h * h * h);
    };

    // (k, p, restrict to lambda > 1)
    const int conds[8][3] = {{0, 1, 1}, {0, 2, 1}, {1, 0, 0}, {1, 1, 0},
                             {1, 2, 0}, {2, 2, 0}, {2, 3, 0}, {3, 3, 0}};
    DecayReport rep;
    for (auto& c : conds) {
        DecayCondition dc;
        dc.k = c[0];
        dc.p = c[1];
        double sup = 0.0;
        bool finite = true;
        for (double l : grid) {
            if (c[2] && l <= 1.0) continue;
            double h = 1e-4 * l;
            cplx v;
            switch (dc.k) {
                case 0: v = spec.psi_hat(l); break;
                case 1: v = d1(l, h); break;
                case 2: v = d2(l, h); break;
                default: v = d3(l, h); break;
            }
            double mag = std::pow(l, dc.p) * std::abs(v);
            if (!std::isfinite(mag)) finite = false;
            sup = std::max(sup, mag);
        }
        dc.sup = sup;
        dc.finite = finite;
        rep.all_finite = rep.all_finite && finite;
        rep.conditions.push_back(dc);
    }
    return rep;
}

}  // namespace awt
