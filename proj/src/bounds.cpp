#include "awt/bounds.hpp"

#include <cmath>

namespace awt {
namespace bounds {

double magnitude_concentration_bound(double q, double eps) {
    if (!(q >= 0.0) || !(eps > 0.0))
        throw domain_error("magnitude_concentration_bound: need q >= 0, eps > 0");
    return std::exp(-eps * eps / 16.0 * q) + std::exp(-0.5 * eps * q);
}

double ridge_epsilon(double wf_ridge, double wf_other, double delta) {
    if (!(wf_ridge > 0.0) || !(wf_other >= 0.0))
        throw domain_error("ridge_epsilon: need |W_f(ridge)| > 0, |W_f(other)| >= 0");
    if (!(delta >= 0.0) || !(delta < 1.0))
        throw domain_error("ridge_epsilon: delta must lie in [0, 1)");
    double shrunk = (1.0 - delta) * wf_other;
    double eps = (wf_ridge - shrunk) / (wf_ridge + shrunk);
    if (!(eps > 0.0))
        throw domain_error("ridge_epsilon: bound inapplicable, eps <= 0");
    return eps;
}

double ridge_misid_bound(double q_ridge, double q_other, double eps) {
    if (!(q_ridge >= 0.0) || !(q_other >= 0.0) || !(eps > 0.0) || !(eps <= 1.0))
        throw domain_error("ridge_misid_bound: need q >= 0 and eps in (0, 1]");
    return magnitude_concentration_bound(q_ridge, eps) +
           magnitude_concentration_bound(q_other, eps);
}

double phase_concentration_bound(double q, double eps) {
    if (!(q >= 0.0) || !(eps > 0.0) || !(eps < 0.5 * pi))
        throw domain_error("phase_concentration_bound: need q >= 0, eps in (0, pi/2)");
    double c = std::cos(eps);
    return eps / pi * std::exp(-q) +
           2.0 * eps * std::sqrt(q / pi) * c * std::exp(-q * (1.0 - c * c));
}

}  // namespace bounds
}  // namespace awt
