#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "awt/common.hpp"

namespace awt {
namespace validate {

struct Config {
    std::size_t n_paths = 10000;
    std::uint64_t seed = 20250801;
    int threads = 2;
};

// Rice law of |W_Y| at SNRs ~ {0, 4, 25} (KS against the 99% line).
struct ProbeKs {
    double q = 0.0;
    double ks = 0.0;
    double line = 0.0;
    std::size_t n = 0;
    bool ok() const { return ks < line; }
};
struct PdfMagReport {
    std::vector<ProbeKs> rows;
    bool pass = true;
};
PdfMagReport pdf_mag(const Config& cfg);

// Phase marginals: null uniformity, histogram peak location at q in {2, 10},
// normalization of the analytic marginal.
struct PhasePeak {
    double q = 0.0;
    int argmax_bin = 0;
    int expect_bin = 0;
    int bins = 64;
    int circ_dist = 0;
};
struct PdfPhaseReport {
    double ks_uniform = 0.0;
    double line = 0.0;
    std::vector<PhasePeak> peaks;
    double norm_err = 0.0;
    bool pass = true;
};
PdfPhaseReport pdf_phase(const Config& cfg);

// Joint-law identities, quadrature only: n=2 null normalization, Laguerre
// series agreement, J(M) closed form, null phase-pair normalization and
// difference-profile argmax.
struct PdfJointReport {
    double mag_norm = 0.0;       // 2-D quadrature of the n=2 null density
    double laguerre_series = 0.0;
    double laguerre_closed = 0.0;
    double j_numeric = 0.0;
    double j_closed = 0.0;
    double phase_norm = 0.0;
    int argmax_offset_steps = 0;

    double mag_norm_err() const { return std::abs(mag_norm - 1.0); }
    double laguerre_rel_err() const {
        return std::abs(laguerre_closed - laguerre_series) / laguerre_series;
    }
    double j_rel_err() const { return std::abs(j_numeric - j_closed) / j_closed; }
    double phase_norm_err() const { return std::abs(phase_norm - 1.0); }
    bool pass = true;
};
PdfJointReport pdf_joint();

struct ZRow {
    std::string quantity;
    double analytic = 0.0;
    double empirical = 0.0;
    double se = 0.0;
    double z = 0.0;
    bool ok() const { return std::abs(z) <= 4.0; }
};

// Magnitude moments and correlation against Monte Carlo, plus the small-x
// correlation slope.
struct CovMagReport {
    std::vector<ZRow> rows;
    double slope_rel_err = 0.0;
    bool pass = true;
};
CovMagReport cov_mag(const Config& cfg);

// Circular phase covariance against Monte Carlo and the small-rho covariance
// asymptotic against quadrature at arg(Gamma12) in {0, pi/3, pi}.
struct CovPhaseReport {
    std::vector<ZRow> rows;
    std::vector<double> asym_rel_err;
    bool pass = true;
};
CovPhaseReport cov_phase(const Config& cfg);

// Chi-square independence of |W(p1)| and Theta(p2) across seeded repetitions.
struct IndependenceReport {
    int reps = 0;
    int non_reject = 0;
    bool pass = true;
};
IndependenceReport independence(const Config& cfg, int reps = 100);

struct BoundRow {
    std::string kind;
    double eps = 0.0;
    double delta = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;
    double bound = 0.0;
    double empirical = 0.0;
    std::size_t n = 0;
    bool ok = true;
};
struct BoundsReport {
    std::vector<BoundRow> rows;
    bool pass = true;
};
// Magnitude and phase concentration on a tone, both phase-event conventions.
BoundsReport concentration_bounds(const Config& cfg);
// Ridge misidentification on a chirp at delta in {0, 0.2}, three scale pairs.
BoundsReport ridge_bounds(const Config& cfg);

}  // namespace validate
}  // namespace awt
