#pragma once

#include <array>
#include <string>
#include <vector>

#include "piconelab/expr.hpp"

namespace piconelab {

/// Axis-aligned computational domain: an interval or a rectangle.
struct Domain {
    int dim = 1;
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 1.0};

    static Domain interval(double a, double b);
    static Domain rectangle(double a1, double b1, double a2, double b2);

    double length(int axis) const { return hi[static_cast<size_t>(axis)] - lo[static_cast<size_t>(axis)]; }
    double measure() const;
    bool contains_interior(const Point& p) const;
    /// True when *this is contained in other and the two are not equal.
    bool strictly_inside(const Domain& other) const;
    std::string describe() const;
};

/// Parse "interval a b" or "rectangle a1 b1 a2 b2".
Domain parse_domain(const std::string& text);

/// Quasi-uniform midpoint grid of interior points, per_axis points per axis
/// (so per_axis points in 1-D, per_axis^2 in 2-D). Never touches the boundary.
std::vector<Point> interior_samples(const Domain& dom, int per_axis);

/// Points on the boundary: the two endpoints in 1-D, per_edge samples along
/// each edge (corners included) in 2-D.
std::vector<Point> boundary_samples(const Domain& dom, int per_edge = 17);

} // namespace piconelab
