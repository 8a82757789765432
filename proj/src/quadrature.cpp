#include "awt/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace awt {

namespace {

GaussLegendre compute_gl(int n) {
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    // Newton iteration on P_n, Chebyshev initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        gl.weights[i] = w;
        gl.weights[n - 1 - i] = w;
    }
    return gl;
}

std::mutex gl_mutex;
std::map<int, GaussLegendre> gl_cache;

}  // namespace

const GaussLegendre& GaussLegendre::order(int n) {
    std::lock_guard<std::mutex> lock(gl_mutex);
    auto it = gl_cache.find(n);
    if (it == gl_cache.end()) it = gl_cache.emplace(n, compute_gl(n)).first;
    return it->second;
}

std::vector<double> linear_panels(double a, double b, int n) {
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = a + (b - a) * i / n;
    return v;
}

std::vector<double> log_panels(double a, double b, int n) {
    if (a <= 0.0 || b <= a) throw domain_error("log_panels: need 0 < a < b");
    std::vector<double> v(n + 1);
    double la = std::log(a), lb = std::log(b);
    for (int i = 0; i <= n; ++i) v[i] = std::exp(la + (lb - la) * i / n);
    v.front() = a;
    v.back() = b;
    return v;
}

}  // namespace awt
