#pragma once

#include <array>

#include "geodist/errors.hpp"

namespace geodist {

/// Point on the torus R^2/Z^2, wrapped into [-1/2, +1/2)^2.
struct TorusPoint {
    TorusPoint(double x_in, double y_in);
    double x;
    double y;
};

/// Closed-form torus distance over the unit square with paired sides.
double torus_distance(const TorusPoint& p1, const TorusPoint& p2);

/// Great-circle distance between unit vectors, in [0, pi].
double sphere_distance(const std::array<double, 3>& p1, const std::array<double, 3>& p2);

} // namespace geodist
