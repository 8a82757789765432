#pragma once

#include <optional>
#include <vector>

#include "awt/common.hpp"

namespace awt {
namespace bounds {

// P(| |W_Y|/|W_f| - 1 | > eps) <= exp(-eps^2 q / 16) + exp(-eps q / 2).
double magnitude_concentration_bound(double q, double eps);

// Deviation threshold entering the ridge bound,
// eps = (Wr - (1-delta) Wo) / (Wr + (1-delta) Wo); positive or the bound
// does not apply.
double ridge_epsilon(double wf_ridge, double wf_other, double delta);

// P(|W_Y(t, s_f)| < (1-delta)|W_Y(t, s)|) <= sum of four exponentials.
double ridge_misid_bound(double q_ridge, double q_other, double eps);

// P(d(Theta_Y, arg W_f) > eps) <=
//   (eps/pi) e^{-q} + (2 eps sqrt(q)/sqrt(pi)) cos(eps) e^{-q (1 - cos^2 eps)},
// eps in (0, pi/2), d the cosine distance 1 - |cos(.)|.
double phase_concentration_bound(double q, double eps);

struct BoundReport {
    double epsilon = 0.0;
    std::vector<double> q_values;
    double bound = 0.0;
    std::optional<double> empirical;
    std::optional<long> n_paths;
    // Bounds above 1 are valid but carry no information.
    bool vacuous() const { return bound > 1.0; }
};

}  // namespace bounds
}  // namespace awt
