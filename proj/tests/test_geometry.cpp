#include <cmath>

#include "awt/geometry.hpp"
#include "awt/rng.hpp"
#include "doctest.h"

using namespace awt;
using namespace awt::geometry;

namespace {

TimeScaleGrid make_grid(std::size_t n_t, double dt, std::vector<double> scales) {
    TimeScaleGrid g;
    g.t0 = 0.0;
    g.dt = dt;
    g.n_t = n_t;
    g.scales = std::move(scales);
    return g;
}

// Gaussian bump field exp(-((t-t0)/a)^2 - ((s-s0)/b)^2) sampled on the grid.
RealMatrix bump_field(const TimeScaleGrid& g, double t0, double s0, double a,
                      double b) {
    RealMatrix m;
    m.rows = g.scales.size();
    m.cols = g.n_t;
    m.data.resize(m.rows * m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            m.at(i, j) = std::exp(-sqr((g.time(j) - t0) / a) -
                                  -(-sqr((g.scales[i] - s0) / b)));
    return m;
}

double bilinear(const RealMatrix& m, const TimeScaleGrid& g, double t, double s) {
    double jf = (t - g.t0) / g.dt;
    auto j0 = std::min<std::size_t>(static_cast<std::size_t>(jf), g.n_t - 2);
    double a = jf - static_cast<double>(j0);
    std::size_t i1 = 1;
    while (i1 + 1 < g.scales.size() && g.scales[i1] < s) ++i1;
    std::size_t i0 = i1 - 1;
    double b = (s - g.scales[i0]) / (g.scales[i1] - g.scales[i0]);
    return (1 - a) * (1 - b) * m.at(i0, j0) + a * (1 - b) * m.at(i0, j0 + 1) +
           (1 - a) * b * m.at(i1, j0) + a * b * m.at(i1, j0 + 1);
}

bool point_in_polygon(const std::vector<std::pair<double, double>>& poly, double t,
                      double s) {
    bool inside = false;
    for (std::size_t k = 0, m = poly.size() - 1; k < poly.size(); m = k++) {
        auto [t1, s1] = poly[k];
        auto [t2, s2] = poly[m];
        if ((s1 > s) != (s2 > s) && t < (t2 - t1) * (s - s1) / (s2 - s1) + t1)
            inside = !inside;
    }
    return inside;
}

}  // namespace

TEST_CASE("ridge: toy argmax, ties, zero columns") {
    auto g = make_grid(2, 1.0, {1.0, 2.0});
    RealMatrix m;
    m.rows = 2;
    m.cols = 2;
    m.data = {1.0, 2.0, 3.0, 1.0};  // row 0 = scale 1, row 1 = scale 2
    auto r = extract_ridge(m, g);
    CHECK(r.s_f[0] == 2.0);
    CHECK(r.s_f[1] == 1.0);
    CHECK(r.is_boundary[0] == 1);

    // Tie breaks toward the smallest scale.
    m.data = {5.0, 1.0, 5.0, 2.0};
    auto rt = extract_ridge(m, g);
    CHECK(rt.s_f[0] == 1.0);

    // All-zero column flagged and pinned to the smallest scale.
    m.data = {0.0, 1.0, 0.0, 2.0};
    auto rz = extract_ridge(m, g);
    CHECK(rz.is_degenerate[0] == 1);
    CHECK(rz.s_f[0] == 1.0);
    CHECK(rz.is_degenerate[1] == 0);
}

TEST_CASE("ridge on tone and chirp fields") {
    double fs = 200.0;
    std::size_t n = 512;
    auto spec = WaveletSpec::morse(2.0, 1.0);
    auto scales = log_scales(0.02, 0.3, 40);

    auto Wt = awt_forward(tone_signal(10.0, 1.0, fs, n), 1.0 / fs, spec, scales);
    auto ridge_t = extract_ridge(magnitude_field(Wt), Wt.grid);
    for (std::size_t j = n / 4; j < 3 * n / 4; ++j)
        CHECK(ridge_t.s_f[j] == ridge_t.s_f[n / 4]);

    // Linear chirp: instantaneous frequency rises, ridge scale falls.
    std::size_t nc = 2000;
    auto Wc = awt_forward(chirp_signal(fs, nc), 1.0 / fs, spec, scales);
    auto ridge_c = extract_ridge(magnitude_field(Wc), Wc.grid);
    std::size_t j1 = 600, j2 = 1000, j3 = 1600;  // 3 s, 5 s, 8 s
    CHECK(ridge_c.s_f[j2] < ridge_c.s_f[j1]);
    CHECK(ridge_c.s_f[j3] < ridge_c.s_f[j2]);
}

TEST_CASE("ridge invariance under monotone transforms") {
    auto g = make_grid(64, 0.1, {0.5, 0.7, 1.0, 1.4, 2.0});
    RealMatrix m = bump_field(g, 3.0, 1.0, 1.5, 0.8);
    auto base = extract_ridge(m, g);
    RealMatrix sq = m, lg = m;
    for (auto& v : sq.data) v = v * v;
    for (auto& v : lg.data) v = std::log1p(v);
    auto rs = extract_ridge(sq, g);
    auto rl = extract_ridge(lg, g);
    for (std::size_t j = 0; j < g.n_t; ++j) {
        CHECK(rs.s_f[j] == base.s_f[j]);
        CHECK(rl.s_f[j] == base.s_f[j]);
    }
}

TEST_CASE("level set on constant and bump fields") {
    auto g = make_grid(80, 0.1, linear_scales(0.5, 2.5, 60));
    RealMatrix flat;
    flat.rows = 60;
    flat.cols = 80;
    flat.data.assign(60 * 80, 1.0);
    CHECK(extract_level_set(flat, g, 0.5).polylines.empty());

    auto m = bump_field(g, 4.0, 1.5, 1.2, 0.5);
    double peak = *std::max_element(m.data.begin(), m.data.end());
    auto set = extract_level_set(m, g, 0.5 * peak);
    REQUIRE(set.polylines.size() == 1);
    CHECK(set.polylines[0].closed);

    // Vertices reproduce the level under grid interpolation.
    for (auto& [t, s] : set.polylines[0].pts)
        CHECK(std::abs(bilinear(m, g, t, s) - 0.5 * peak) <= 1e-6 * peak);

    // Nested levels: the higher contour lies inside the lower one.
    auto outer_set = extract_level_set(m, g, 0.3 * peak);
    REQUIRE(outer_set.polylines.size() == 1);
    for (auto& [t, s] : set.polylines[0].pts)
        CHECK(point_in_polygon(outer_set.polylines[0].pts, t, s));
}

TEST_CASE("saddle cell disambiguation") {
    auto g = make_grid(2, 1.0, {1.0, 2.0});
    RealMatrix m;
    m.rows = 2;
    m.cols = 2;
    m.data = {1.0, 0.0, 0.0, 1.0};  // BL and TR inside at level 0.5
    auto set = extract_level_set(m, g, 0.5);
    // Cell average = 0.5 >= level: two open segments, BL/TR joined band.
    CHECK(set.polylines.size() == 2);
    for (auto& pl : set.polylines) CHECK(pl.pts.size() == 2);

    m.data = {1.0, 0.2, 0.2, 1.0};  // average 0.6 >= 0.5, same resolution
    auto set2 = extract_level_set(m, g, 0.5);
    CHECK(set2.polylines.size() == 2);

    m.data = {0.6, 0.0, 0.0, 0.6};  // average 0.3 < 0.5: separated islands
    auto set3 = extract_level_set(m, g, 0.5);
    CHECK(set3.polylines.size() == 2);
}

TEST_CASE("contour regularity diagnostic") {
    // Bump centered exactly on a grid node so the discrete and continuous
    // critical points coincide.
    auto g = make_grid(100, 0.05, linear_scales(0.5, 2.5, 81));
    ComplexField W;
    W.grid = g;
    W.values.resize(81 * 100);
    double t0 = 2.5, s0 = 1.5;
    for (std::size_t i = 0; i < 81; ++i)
        for (std::size_t j = 0; j < 100; ++j)
            W.at(i, j) = std::exp(-sqr((g.time(j) - t0) / 1.0) - sqr((g.scales[i] - s0) / 0.4));

    double half = contour_regularity_report(W, 0.5);
    CHECK(half > 0.1);

    // A level just under the discrete peak is nearly critical.
    double peak = 0.0;
    for (auto v : W.values) peak = std::max(peak, v.real());
    double near_peak = contour_regularity_report(W, peak * (1.0 - 1e-6));
    CHECK(near_peak < 0.01 * half);

    // Empty level set.
    CHECK(std::isinf(contour_regularity_report(W, 2.0)));
}
