#pragma once

#include "qarctic/arctic.hpp"

#include <vector>

namespace qarctic {

struct Pt {
    double x, y;
};

using Polyline = std::vector<Pt>;

enum class Limit { q_to_0, q_to_inf };

// Vertices (1 + theta_i - U_i, 1 - U_i) and (theta_i, U_i) over all breakpoints.
std::vector<Pt> m_vertices(const StartDensity& d);
std::vector<Pt> n_vertices(const StartDensity& d);

// Limiting arctic curve as polylines. Generic profiles give {left part, right part};
// the hexagon gives its three-segment star.
std::vector<Polyline> limit_curve(const StartDensity& d, Limit which);

// Limit of the curve of a window: (theta_s, 0) -> V_s -> V_e -> (theta_e, 0).
Polyline window_limit(const StartDensity& d, const TDomain& window, Limit which);

// Splits a sampled curve into polylines at points where samples were dropped.
std::vector<Polyline> curve_polylines(const Curve& c);

// Symmetric Hausdorff distance; segments of each side are resampled at spacing h and
// the samples are projected onto the segments of the other side.
double hausdorff_distance(const std::vector<Polyline>& a, const std::vector<Polyline>& b, double h = 1e-3);

}  // namespace qarctic
