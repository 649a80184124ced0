#pragma once

#include "geodist/distance.hpp"
#include "geodist/surface.hpp"

namespace geodist {

/// Closed-form constants of the generalized Bolza surface S_g.
struct BolzaParams {
    int genus = 0;
    double radius_R = 0.0;      // cosh R = cot^2(pi/4g)
    double side_length_s = 0.0; // cosh(s/2) = cot(pi/4g)
    double diameter_D = 0.0;    // arccosh(cot(pi/4g))
    int k_star = 0;             // bolza_k_star(genus)
    std::optional<int> k_min_known; // 1 for genus 2
};

BolzaParams bolza_params(int genus);

/// Family k_star bound: floor(1 + arccosh(cot(pi/4g)) / arccosh(2 cos(pi/2g))).
int bolza_k_star(int genus);

/// Regular 4g-gon with interior angles pi/2g and opposite-side pairing.
SurfaceModel build_bolza(int genus, SurfaceConfig config = {});

/// Genus-2 shortcut: minimize over the 49-element neighbor set only
/// (k_min = 1 there). Every candidate is evaluated.
DistanceResult bolza_fast_path_g2(const DiskPoint& z, const DiskPoint& w,
                                  const SurfaceModel& surface);

} // namespace geodist
