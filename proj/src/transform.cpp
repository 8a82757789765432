#include "awt/transform.hpp"

#include <cmath>
#include <iostream>

#include "awt/fft.hpp"

namespace awt {

void TimeScaleGrid::validate() const {
    if (!(dt > 0.0)) throw validation_error("grid: dt must be > 0");
    if (n_t < 8) throw validation_error("grid: need at least 8 samples");
    if (scales.empty()) throw validation_error("grid: need at least one scale");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0)) throw validation_error("grid: scales must be > 0");
        if (i > 0 && !(scales[i] > scales[i - 1]))
            throw validation_error("grid: scales must be strictly increasing");
    }
}

std::vector<double> log_scales(double s_min, double s_max, std::size_t n) {
    if (!(s_min > 0.0) || !(s_max > s_min) || n < 2)
        throw validation_error("log_scales: need 0 < s_min < s_max and n >= 2");
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = s_min * std::pow(s_max / s_min, static_cast<double>(i) / (n - 1));
    return s;
}

std::vector<double> linear_scales(double s_min, double s_max, std::size_t n) {
    if (!(s_min > 0.0) || !(s_max > s_min) || n < 2)
        throw validation_error("linear_scales: need 0 < s_min < s_max and n >= 2");
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = s_min + (s_max - s_min) * static_cast<double>(i) / (n - 1);
    return s;
}

ComplexField awt_forward(const std::vector<cplx>& signal, double dt,
                         const WaveletSpec& spec, const std::vector<double>& scales,
                         double t0, int n_threads) {
    ComplexField field;
    field.grid.t0 = t0;
    field.grid.dt = dt;
    field.grid.n_t = signal.size();
    field.grid.scales = scales;
    field.grid.validate();

    for (const cplx& v : signal)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw domain_error("awt_forward: non-finite sample");

    const std::size_t n_t = signal.size();
    const std::size_t n_half = n_t / 2;
    std::vector<cplx> sig_hat(signal);
    fft_inplace(sig_hat, -1);

    field.values.assign(scales.size() * n_t, cplx(0.0));
    double dlambda = two_pi / (static_cast<double>(n_t) * dt);

    parallel_for(scales.size(), n_threads, [&](std::size_t si) {
        double s = scales[si];
        double root_s = std::sqrt(s);
        std::vector<cplx> row(n_t, cplx(0.0));
        bool any = false;
        for (std::size_t k = 1; k <= n_half; ++k) {
            cplx response = root_s * std::conj(spec.psi_hat(s * k * dlambda));
            if (response != cplx(0.0)) any = true;
            row[k] = sig_hat[k] * response;
        }
        if (!any) {
            std::cerr << "warning: scale " << s
                      << " attenuates every frequency bin; row zeroed\n";
            return;  // row already zero
        }
        fft_inplace(row, +1);
        double inv_n = 1.0 / static_cast<double>(n_t);
        for (std::size_t j = 0; j < n_t; ++j) field.at(si, j) = row[j] * inv_n;
    });
    return field;
}

ComplexField awt_forward(const std::vector<double>& signal, double dt,
                         const WaveletSpec& spec, const std::vector<double>& scales,
                         double t0, int n_threads) {
    std::vector<cplx> c(signal.begin(), signal.end());
    return awt_forward(c, dt, spec, scales, t0, n_threads);
}

double phase_of(cplx w) {
    if (w == cplx(0.0)) return 0.0;
    double a = std::arg(w);
    if (a < 0.0) a += two_pi;
    if (a >= two_pi) a = 0.0;
    return a;
}

RealMatrix magnitude_field(const ComplexField& W) {
    RealMatrix m;
    m.rows = W.n_scales();
    m.cols = W.grid.n_t;
    m.data.resize(W.values.size());
    for (std::size_t i = 0; i < W.values.size(); ++i) m.data[i] = std::abs(W.values[i]);
    return m;
}

RealMatrix phase_field(const ComplexField& W) {
    RealMatrix m;
    m.rows = W.n_scales();
    m.cols = W.grid.n_t;
    m.data.resize(W.values.size());
    for (std::size_t i = 0; i < W.values.size(); ++i) m.data[i] = phase_of(W.values[i]);
    return m;
}

SnrField snr_field(const ComplexField& W_f, const SpectralMeasure& F,
                   const WaveletSpec& spec) {
    SnrField out;
    out.grid = W_f.grid;
    out.q.resize(W_f.values.size());
    for (std::size_t si = 0; si < W_f.n_scales(); ++si) {
        double s = W_f.grid.scales[si];
        auto g = compute_gamma(F, spec, {{0.0, s}});
        double denom = g.gamma(0, 0).real();
        if (!(denom > 0.0))
            throw domain_error("snr_field: degenerate scale " + std::to_string(s) +
                               " (noise energy vanishes)");
        for (std::size_t j = 0; j < W_f.grid.n_t; ++j)
            out.at(si, j) = std::norm(W_f.at(si, j)) / denom;
    }
    return out;
}

std::vector<std::uint8_t> coi_mask(const TimeScaleGrid& grid) {
    std::vector<std::uint8_t> mask(grid.scales.size() * grid.n_t, 0);
    for (std::size_t si = 0; si < grid.scales.size(); ++si) {
        auto margin = static_cast<std::size_t>(std::ceil(4.0 * grid.scales[si] / grid.dt));
        for (std::size_t j = 0; j < grid.n_t; ++j) {
            bool edge = j < margin || j + margin >= grid.n_t;
            mask[si * grid.n_t + j] = edge ? 1 : 0;
        }
    }
    return mask;
}

double scale_to_frequency(double s, const FreqConvention& conv) {
    if (!(s > 0.0)) throw domain_error("scale_to_frequency: scale must be > 0");
    switch (conv.kind) {
        case FreqConvention::Kind::fs_over_s:
            return conv.nu / s;
        case FreqConvention::Kind::angular:
            return conv.omega_psi / s;
    }
    return 0.0;
}

std::vector<double> tone_signal(double freq_hz, double amplitude, double fs,
                                std::size_t n) {
    std::vector<double> y(n);
    for (std::size_t j = 0; j < n; ++j)
        y[j] = amplitude * std::cos(two_pi * freq_hz * j / fs);
    return y;
}

std::vector<double> chirp_signal(double fs, std::size_t n) {
    std::vector<double> y(n);
    for (std::size_t j = 0; j < n; ++j) {
        double t = j / fs;
        y[j] = std::cos(two_pi * 0.5 * t * t);
    }
    return y;
}

}  // namespace awt
