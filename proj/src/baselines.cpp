#include "geodist/baselines.hpp"

#include <cmath>
#include <string>

namespace geodist {

namespace {

double wrap_unit(double v) {
    const double w = v - std::floor(v + 0.5);
    return w == 0.5 ? -0.5 : w;
}

} // namespace

TorusPoint::TorusPoint(double x_in, double y_in) : x(wrap_unit(x_in)), y(wrap_unit(y_in)) {}

double torus_distance(const TorusPoint& p1, const TorusPoint& p2) {
    const double dx = 0.5 - std::abs(0.5 - std::abs(p1.x - p2.x));
    const double dy = 0.5 - std::abs(0.5 - std::abs(p1.y - p2.y));
    return std::sqrt(dx * dx + dy * dy);
}

double sphere_distance(const std::array<double, 3>& p1, const std::array<double, 3>& p2) {
    for (const auto& p : {p1, p2}) {
        const double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        if (std::abs(norm - 1.0) > 1e-12) {
            throw InvalidInputError("sphere_distance: input is not a unit vector (|p| = " +
                                    std::to_string(norm) + ")");
        }
    }
    const double dot = p1[0] * p2[0] + p1[1] * p2[1] + p1[2] * p2[2];
    const std::array<double, 3> cr = {p1[1] * p2[2] - p1[2] * p2[1],
                                      p1[2] * p2[0] - p1[0] * p2[2],
                                      p1[0] * p2[1] - p1[1] * p2[0]};
    const double cross_norm = std::sqrt(cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]);
    return std::atan2(cross_norm, dot);
}

} // namespace geodist
