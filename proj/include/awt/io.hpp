#pragma once

#include <map>
#include <string>
#include <vector>

#include "awt/common.hpp"
#include "awt/geometry.hpp"
#include "awt/spectrum.hpp"
#include "awt/transform.hpp"
#include "awt/wavelet.hpp"

namespace awt {
namespace io {

// All floating-point output uses 17 significant digits so values round-trip.
std::string fmt(double v);

// Field binary format: magic "AWTF", u32 version = 1, u64 n_scales, u64 n_t,
// f64 t0, f64 dt, f64 scales[n_scales], then row-major interleaved (re, im)
// f64, little-endian.
void write_field_awtf(const ComplexField& field, const std::string& path);
ComplexField read_field_awtf(const std::string& path);

// CSV export t,s,re,im,mag,phase (one row per sample, scales-major).
void write_field_csv(const ComplexField& field, const std::string& path,
                     const std::vector<std::string>& header_comments = {});

// 8-bit PGM quick-look of the magnitude, one row per scale. db=true maps
// 20 log10(|W|/max) on [-80, 0] dB; otherwise linear in |W|/max.
void write_field_pgm(const ComplexField& field, const std::string& path, bool db);

// Signal CSV "t,y" with uniform spacing.
struct Signal {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<double> samples;
};
Signal read_signal_csv(const std::string& path);

// Custom wavelet CSV "lambda,re,im": strictly increasing lambda > 0, >= 16 rows.
WaveletSpec read_wavelet_csv(const std::string& path);

// Spectral density CSV "lambda,density", lambda >= 0 (even extension applied).
SpectralMeasure read_density_csv(const std::string& path);

// GammaMatrix CSV "l,lp,re,im,pseudo_re,pseudo_im".
void write_gamma_csv(const GammaMatrix& g, const std::string& path,
                     const std::vector<std::string>& header_comments = {});

// Contours: "polyline_id,vertex_id,t,s"; ridge: "t,s_f,boundary_flag".
void write_contours_csv(const std::vector<geometry::ContourSet>& sets,
                        const std::string& path,
                        const std::vector<std::string>& header_comments = {});
void write_ridge_csv(const geometry::RidgeCurve& r, const std::string& path,
                     const std::vector<std::string>& header_comments = {});

// Line-oriented key=value run manifest; unknown keys (not in `allowed`)
// are rejected.
std::map<std::string, std::string> read_manifest(
    const std::string& path, const std::vector<std::string>& allowed);

// Generic CSV table writer with '#' comment lines before the header.
void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::string& header, const std::vector<std::string>& rows);

}  // namespace io
}  // namespace awt
