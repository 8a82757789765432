#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace awt {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Bad argument values (non-finite input, parameter out of range).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed inputs: files, tabulations, configs.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation that started from valid inputs failed to reach its
// accuracy target (non-convergent quadrature, singular matrix, ...).
struct numeric_error : std::runtime_error {
    double achieved = 0.0;
    explicit numeric_error(const std::string& msg, double achieved_err = 0.0)
        : std::runtime_error(msg), achieved(achieved_err) {}
};

struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double sqr(double x) { return x * x; }

// Runs fn(i) for i in [0, n). Work is split into contiguous blocks, one per
// worker; results must be written by index so the output is independent of
// scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int n_threads, Fn&& fn) {
    if (n == 0) return;
    if (n_threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(n_threads), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace awt
