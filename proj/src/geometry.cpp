#include "awt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace awt {
namespace geometry {

RidgeCurve extract_ridge(const RealMatrix& mag, const TimeScaleGrid& grid) {
    if (mag.rows < 2) throw domain_error("extract_ridge: need at least 2 scales");
    if (mag.rows != grid.scales.size() || mag.cols != grid.n_t)
        throw domain_error("extract_ridge: field/grid shape mismatch");
    RidgeCurve r;
    r.times.resize(mag.cols);
    r.s_f.resize(mag.cols);
    r.is_boundary.resize(mag.cols);
    r.is_degenerate.resize(mag.cols);
    for (std::size_t j = 0; j < mag.cols; ++j) {
        std::size_t best = 0;
        double best_v = mag.at(0, j);
        for (std::size_t i = 1; i < mag.rows; ++i) {
            if (mag.at(i, j) > best_v) {  // strict: ties keep the smaller scale
                best_v = mag.at(i, j);
                best = i;
            }
        }
        bool degenerate = best_v == 0.0;
        if (degenerate) best = 0;
        r.times[j] = grid.time(j);
        r.s_f[j] = grid.scales[best];
        r.is_boundary[j] = (best == 0 || best + 1 == mag.rows) ? 1 : 0;
        r.is_degenerate[j] = degenerate ? 1 : 0;
    }
    return r;
}

namespace {

// Edge ids: horizontal edge (i,j)-(i,j+1) and vertical edge (i,j)-(i+1,j).
std::size_t h_edge(std::size_t i, std::size_t j, std::size_t n_t) {
    return 2 * (i * n_t + j);
}
std::size_t v_edge(std::size_t i, std::size_t j, std::size_t n_t) {
    return 2 * (i * n_t + j) + 1;
}

struct Segment {
    std::size_t e0, e1;
};

}  // namespace

ContourSet extract_level_set(const RealMatrix& mag, const TimeScaleGrid& grid,
                             double level) {
    if (mag.rows != grid.scales.size() || mag.cols != grid.n_t)
        throw domain_error("extract_level_set: field/grid shape mismatch");
    ContourSet out;
    out.level = level;
    if (mag.rows < 2 || mag.cols < 2) return out;

    const std::size_t n_s = mag.rows, n_t = mag.cols;

    // Vertex position on each crossing edge.
    std::map<std::size_t, std::pair<double, double>> vertex;
    auto edge_vertex = [&](std::size_t id, std::size_t i, std::size_t j,
                           bool horizontal) {
        auto it = vertex.find(id);
        if (it != vertex.end()) return;
        double v0 = mag.at(i, j);
        double v1 = horizontal ? mag.at(i, j + 1) : mag.at(i + 1, j);
        double alpha = (level - v0) / (v1 - v0);
        double t = grid.time(j), s = grid.scales[i];
        if (horizontal)
            t += alpha * (grid.time(j + 1) - grid.time(j));
        else
            s += alpha * (grid.scales[i + 1] - grid.scales[i]);
        vertex.emplace(id, std::make_pair(t, s));
    };

    std::vector<Segment> segments;
    std::map<std::size_t, std::vector<std::size_t>> incident;  // edge -> segment ids

    for (std::size_t i = 0; i + 1 < n_s; ++i) {
        for (std::size_t j = 0; j + 1 < n_t; ++j) {
            int a = mag.at(i, j) >= level;          // bottom-left
            int b = mag.at(i, j + 1) >= level;      // bottom-right
            int c = mag.at(i + 1, j + 1) >= level;  // top-right
            int d = mag.at(i + 1, j) >= level;      // top-left
            int code = a | (b << 1) | (c << 2) | (d << 3);
            if (code == 0 || code == 15) continue;

            std::size_t bottom = h_edge(i, j, n_t);
            std::size_t top = h_edge(i + 1, j, n_t);
            std::size_t left = v_edge(i, j, n_t);
            std::size_t right = v_edge(i, j + 1, n_t);

            auto add = [&](std::size_t e0, std::size_t e1) {
                bool horiz0 = (e0 % 2) == 0;
                std::size_t cell0 = e0 / 2;
                edge_vertex(e0, cell0 / n_t, cell0 % n_t, horiz0);
                bool horiz1 = (e1 % 2) == 0;
                std::size_t cell1 = e1 / 2;
                edge_vertex(e1, cell1 / n_t, cell1 % n_t, horiz1);
                incident[e0].push_back(segments.size());
                incident[e1].push_back(segments.size());
                segments.push_back({e0, e1});
            };

            switch (code) {
                case 1: add(left, bottom); break;
                case 2: add(bottom, right); break;
                case 3: add(left, right); break;
                case 4: add(top, right); break;
                case 6: add(bottom, top); break;
                case 7: add(left, top); break;
                case 8: add(left, top); break;
                case 9: add(bottom, top); break;
                case 11: add(top, right); break;
                case 12: add(left, right); break;
                case 13: add(bottom, right); break;
                case 14: add(left, bottom); break;
                case 5: {  // saddle, inside at BL/TR
                    double center = 0.25 * (mag.at(i, j) + mag.at(i, j + 1) +
                                            mag.at(i + 1, j) + mag.at(i + 1, j + 1));
                    if (center >= level) {
                        add(left, top);
                        add(bottom, right);
                    } else {
                        add(left, bottom);
                        add(top, right);
                    }
                    break;
                }
                case 10: {  // saddle, inside at BR/TL
                    double center = 0.25 * (mag.at(i, j) + mag.at(i, j + 1) +
                                            mag.at(i + 1, j) + mag.at(i + 1, j + 1));
                    if (center >= level) {
                        add(left, bottom);
                        add(top, right);
                    } else {
                        add(left, top);
                        add(bottom, right);
                    }
                    break;
                }
                default: break;
            }
        }
    }

    // Chain segments into polylines; each edge touches at most two segments.
    std::vector<bool> used(segments.size(), false);
    for (std::size_t s0 = 0; s0 < segments.size(); ++s0) {
        if (used[s0]) continue;
        std::vector<std::size_t> chain_edges;
        chain_edges.push_back(segments[s0].e0);
        chain_edges.push_back(segments[s0].e1);
        used[s0] = true;

        // Extend forward from the tail, then backward from the head.
        for (int dir = 0; dir < 2; ++dir) {
            bool grew = true;
            while (grew) {
                grew = false;
                std::size_t tail = dir == 0 ? chain_edges.back() : chain_edges.front();
                for (std::size_t sid : incident[tail]) {
                    if (used[sid]) continue;
                    std::size_t nxt =
                        segments[sid].e0 == tail ? segments[sid].e1 : segments[sid].e0;
                    if (dir == 0)
                        chain_edges.push_back(nxt);
                    else
                        chain_edges.insert(chain_edges.begin(), nxt);
                    used[sid] = true;
                    grew = true;
                    break;
                }
            }
        }

        Polyline pl;
        pl.closed = chain_edges.size() > 2 && chain_edges.front() == chain_edges.back();
        if (pl.closed) chain_edges.pop_back();
        for (std::size_t e : chain_edges) pl.pts.push_back(vertex.at(e));
        if (pl.closed) pl.pts.push_back(pl.pts.front());
        out.polylines.push_back(std::move(pl));
    }
    return out;
}

namespace {

// Gradient of a grid function by central differences with non-uniform
// spacing in s (one-sided at borders).
struct GradField {
    std::vector<double> gt, gs;
    std::size_t rows = 0, cols = 0;
    double at_norm(std::size_t i, std::size_t j) const {
        std::size_t k = i * cols + j;
        return std::hypot(gt[k], gs[k]);
    }
};

GradField gradient(const RealMatrix& f, const TimeScaleGrid& grid) {
    GradField g;
    g.rows = f.rows;
    g.cols = f.cols;
    g.gt.resize(f.data.size());
    g.gs.resize(f.data.size());
    for (std::size_t i = 0; i < f.rows; ++i) {
        for (std::size_t j = 0; j < f.cols; ++j) {
            double dt_val;
            if (j == 0)
                dt_val = (f.at(i, 1) - f.at(i, 0)) / grid.dt;
            else if (j + 1 == f.cols)
                dt_val = (f.at(i, j) - f.at(i, j - 1)) / grid.dt;
            else
                dt_val = (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * grid.dt);

            double ds_val;
            if (i == 0)
                ds_val = (f.at(1, j) - f.at(0, j)) / (grid.scales[1] - grid.scales[0]);
            else if (i + 1 == f.rows)
                ds_val = (f.at(i, j) - f.at(i - 1, j)) /
                         (grid.scales[i] - grid.scales[i - 1]);
            else {
                double h1 = grid.scales[i] - grid.scales[i - 1];
                double h2 = grid.scales[i + 1] - grid.scales[i];
                ds_val = (h1 * h1 * f.at(i + 1, j) - h2 * h2 * f.at(i - 1, j) +
                          (h2 * h2 - h1 * h1) * f.at(i, j)) /
                         (h1 * h2 * (h1 + h2));
            }
            g.gt[i * f.cols + j] = dt_val;
            g.gs[i * f.cols + j] = ds_val;
        }
    }
    return g;
}

}  // namespace

ContourSet contour_with_regularity(const ComplexField& W, double c) {
    auto mag = magnitude_field(W);
    auto set = extract_level_set(mag, W.grid, c);

    RealMatrix sq;
    sq.rows = mag.rows;
    sq.cols = mag.cols;
    sq.data.resize(mag.data.size());
    for (std::size_t k = 0; k < mag.data.size(); ++k) sq.data[k] = sqr(mag.data[k]);
    auto grad = gradient(sq, W.grid);

    double min_norm = std::numeric_limits<double>::infinity();
    // Vertices sit on grid edges; interpolate the node gradients along them.
    for (const auto& pl : set.polylines) {
        for (const auto& [t, s] : pl.pts) {
            double jf = (t - W.grid.t0) / W.grid.dt;
            auto j0 = std::min<std::size_t>(static_cast<std::size_t>(jf), W.grid.n_t - 2);
            double a = jf - static_cast<double>(j0);
            auto it = std::upper_bound(W.grid.scales.begin(), W.grid.scales.end(), s);
            std::size_t i1 = std::min<std::size_t>(
                static_cast<std::size_t>(it - W.grid.scales.begin()),
                W.grid.scales.size() - 1);
            std::size_t i0 = i1 > 0 ? i1 - 1 : 0;
            double b = i1 > i0 ? (s - W.grid.scales[i0]) /
                                     (W.grid.scales[i1] - W.grid.scales[i0])
                               : 0.0;
            double gt = (1 - a) * (1 - b) * grad.gt[i0 * mag.cols + j0] +
                        a * (1 - b) * grad.gt[i0 * mag.cols + std::min(j0 + 1, mag.cols - 1)] +
                        (1 - a) * b * grad.gt[i1 * mag.cols + j0] +
                        a * b * grad.gt[i1 * mag.cols + std::min(j0 + 1, mag.cols - 1)];
            double gs = (1 - a) * (1 - b) * grad.gs[i0 * mag.cols + j0] +
                        a * (1 - b) * grad.gs[i0 * mag.cols + std::min(j0 + 1, mag.cols - 1)] +
                        (1 - a) * b * grad.gs[i1 * mag.cols + j0] +
                        a * b * grad.gs[i1 * mag.cols + std::min(j0 + 1, mag.cols - 1)];
            min_norm = std::min(min_norm, std::hypot(gt, gs));
        }
    }
    set.min_grad_norm = min_norm;
    return set;
}

double contour_regularity_report(const ComplexField& W, double c) {
    return contour_with_regularity(W, c).min_grad_norm;
}

}  // namespace geometry
}  // namespace awt
