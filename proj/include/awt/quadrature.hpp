#pragma once

#include <functional>
#include <type_traits>
#include <vector>

#include "awt/common.hpp"

namespace awt {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
// Computed once per order via Newton iteration and cached.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
    static const GaussLegendre& order(int n);
};

// Panel boundaries: n equal panels on [a, b].
std::vector<double> linear_panels(double a, double b, int n);
// Geometrically spaced boundaries on [a, b], 0 < a < b.
std::vector<double> log_panels(double a, double b, int n);

// Composite Gauss-Legendre over explicit panel boundaries.
template <typename F>
auto gl_integrate(F&& f, const std::vector<double>& boundaries, int order = 16) {
    using T = std::decay_t<decltype(f(0.0))>;
    const auto& gl = GaussLegendre::order(order);
    T total{};
    for (std::size_t p = 0; p + 1 < boundaries.size(); ++p) {
        double a = boundaries[p], b = boundaries[p + 1];
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        T acc{};
        for (int i = 0; i < order; ++i)
            acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
        total += half * acc;
    }
    return total;
}

// Trapezoid rule for smooth 2*pi-periodic integrands (spectrally accurate).
template <typename F>
auto periodic_trapezoid(F&& f, int n_nodes) {
    using T = std::decay_t<decltype(f(0.0))>;
    T acc{};
    for (int i = 0; i < n_nodes; ++i) acc += f(two_pi * i / n_nodes);
    return acc * (two_pi / n_nodes);
}

struct RefineResult {
    double value = 0.0;
    double rel_change = 0.0;  // achieved on the last doubling
    bool converged = false;
};

// Doubles the panel count of a composite GL rule until the value changes by
// less than rel_tol (with a small absolute floor), up to max_doublings.
template <typename F>
RefineResult refine_gl(F&& f, double a, double b, int initial_panels, double rel_tol,
                       int max_doublings = 12, int order = 16, bool log_spaced = false) {
    RefineResult res;
    int panels = initial_panels;
    auto bounds = log_spaced ? log_panels(a, b, panels) : linear_panels(a, b, panels);
    double prev = gl_integrate(f, bounds, order);
    for (int d = 0; d < max_doublings; ++d) {
        panels *= 2;
        bounds = log_spaced ? log_panels(a, b, panels) : linear_panels(a, b, panels);
        double cur = gl_integrate(f, bounds, order);
        double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
        res.rel_change = std::abs(cur - prev) / scale;
        prev = cur;
        if (res.rel_change < rel_tol) {
            res.converged = true;
            break;
        }
    }
    res.value = prev;
    return res;
}

}  // namespace awt
