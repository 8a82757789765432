#pragma once

#include <vector>

#include "awt/common.hpp"
#include "awt/transform.hpp"

namespace awt {
namespace geometry {

// Per-time argmax of the magnitude field over scales. Ties break toward the
// smallest scale; all-zero columns are flagged and pinned to the smallest
// scale; boundary flags mark argmax at the first or last scale.
struct RidgeCurve {
    std::vector<double> times;
    std::vector<double> s_f;
    std::vector<std::uint8_t> is_boundary;
    std::vector<std::uint8_t> is_degenerate;  // all-zero column
};

RidgeCurve extract_ridge(const RealMatrix& mag, const TimeScaleGrid& grid);

struct Polyline {
    std::vector<std::pair<double, double>> pts;  // (t, s)
    bool closed = false;
};

// Marching-squares level set of a scalar field on the time-scale grid.
// Vertices are linear interpolations along cell edges; saddle cells are
// disambiguated by the cell-average rule; polylines are chained in a fixed
// scan order. A level outside the field range gives an empty set.
struct ContourSet {
    double level = 0.0;
    std::vector<Polyline> polylines;
    double min_grad_norm = 0.0;  // filled by contour_regularity_report
};

ContourSet extract_level_set(const RealMatrix& mag, const TimeScaleGrid& grid,
                             double level);

// Minimum finite-difference gradient norm of |W|^2 over the vertices of the
// level set {|W| = c}; +infinity when the set is empty. Values near zero
// flag a level close to critical.
double contour_regularity_report(const ComplexField& W, double c);

// Same diagnostic with the ContourSet returned alongside.
ContourSet contour_with_regularity(const ComplexField& W, double c);

}  // namespace geometry
}  // namespace awt
