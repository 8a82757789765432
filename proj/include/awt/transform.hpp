#pragma once

#include <vector>

#include "awt/common.hpp"
#include "awt/spectrum.hpp"
#include "awt/wavelet.hpp"

namespace awt {

struct TimeScaleGrid {
    double t0 = 0.0;
    double dt = 1.0;
    std::size_t n_t = 0;
    std::vector<double> scales;  // strictly increasing, > 0

    double time(std::size_t j) const { return t0 + dt * static_cast<double>(j); }
    void validate() const;
};

std::vector<double> log_scales(double s_min, double s_max, std::size_t n);
std::vector<double> linear_scales(double s_min, double s_max, std::size_t n);

// Complex AWT field over a time-scale grid, scales-major storage.
struct ComplexField {
    TimeScaleGrid grid;
    std::vector<cplx> values;

    cplx& at(std::size_t si, std::size_t tj) { return values[si * grid.n_t + tj]; }
    cplx at(std::size_t si, std::size_t tj) const { return values[si * grid.n_t + tj]; }
    std::size_t n_scales() const { return grid.scales.size(); }
};

struct SnrField {
    TimeScaleGrid grid;
    std::vector<double> q;  // scales-major, >= 0
    double& at(std::size_t si, std::size_t tj) { return q[si * grid.n_t + tj]; }
    double at(std::size_t si, std::size_t tj) const { return q[si * grid.n_t + tj]; }
};

// AWT via the frequency domain: per scale, multiply the signal DFT by
// sqrt(s) conj(psi_hat(s lambda_k)) on bins k = 1..n_t/2 (DC and negative
// bins zeroed by analyticity) and invert. Periodic boundary model. A scale
// whose response underflows on every bin produces a zero row and a warning
// on stderr. Rows are independent; n_threads > 1 splits over scales.
ComplexField awt_forward(const std::vector<cplx>& signal, double dt,
                         const WaveletSpec& spec, const std::vector<double>& scales,
                         double t0 = 0.0, int n_threads = 1);
ComplexField awt_forward(const std::vector<double>& signal, double dt,
                         const WaveletSpec& spec, const std::vector<double>& scales,
                         double t0 = 0.0, int n_threads = 1);

RealMatrix magnitude_field(const ComplexField& W);
// Phase in [0, 2 pi); the phase of an exact zero is 0.
RealMatrix phase_field(const ComplexField& W);
double phase_of(cplx w);

// q(t,s) = |W_f(t,s)|^2 / E|W_Phi(t,s)|^2. The denominator is one Gamma
// diagonal entry per scale (time-independent by stationarity).
SnrField snr_field(const ComplexField& W_f, const SpectralMeasure& F,
                   const WaveletSpec& spec);

// Mask of samples within ceil(4 s / dt) of either edge, per scale
// (cone-of-influence trimming for the periodic boundary model).
std::vector<std::uint8_t> coi_mask(const TimeScaleGrid& grid);

struct FreqConvention {
    enum class Kind { fs_over_s, angular };
    Kind kind = Kind::fs_over_s;
    // fs_over_s: f = nu / s with s in time units; with s expressed in samples
    // this is the usual nu * fs / s_samples.
    double nu = 1.0;
    // angular: f = omega_psi / s, omega_psi = center frequency in cycles.
    double omega_psi = 1.0;
};

double scale_to_frequency(double s, const FreqConvention& conv);

// Test signals shared by the CLI and the validation suites.
std::vector<double> tone_signal(double freq_hz, double amplitude, double fs,
                                std::size_t n);
// cos(2 pi t^2 / 2): instantaneous frequency t Hz at time t.
std::vector<double> chirp_signal(double fs, std::size_t n);

}  // namespace awt
