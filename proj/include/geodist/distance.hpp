#pragma once

#include <utility>

#include "geodist/surface.hpp"

namespace geodist {

/// Shortest quotient distance plus the group element realizing it.
struct DistanceResult {
    double distance = 0.0;
    Isometry minimizer;
    std::size_t polygons_examined = 0;
    std::size_t candidates_evaluated = 0;
};

struct AlgorithmOptions {
    /// Strict-inequality push rule without dedup. When the closest point of a
    /// polygon to z is one of its vertices, the adjacent fan polygons share
    /// that closest point and no strictly increasing chain reaches it, so this
    /// variant can miss minimizers; it exists for overcount comparisons.
    bool printed_rule = false;
    /// Deduplicate pushed elements by canonical key under printed_rule. The
    /// default rule always dedups (equal-distance pushes would cycle).
    bool memoize = false;
    std::size_t step_cap = 100'000'000;
};

/// Finite distance formula: min over the cached T^(k_star) candidate set of
/// dist(z, g w). Both points must lie in the fundamental polygon.
DistanceResult distance_formula(const DiskPoint& z, const DiskPoint& w,
                                const SurfaceModel& surface);

/// Depth-first tessellation search. Children g*g_i are pushed while
/// dist(z, gP) < dist(z, g g_i P) < bound, bound = diameter override or diam(P).
DistanceResult distance_algorithm(const DiskPoint& z, const DiskPoint& w,
                                  const SurfaceModel& surface, const AlgorithmOptions& options = {});

/// Distance from z to the nearest side of gP; zero when g is the identity.
double dist_point_to_polygon(const DiskPoint& z, const Isometry& g,
                             const FundamentalPolygon& polygon);

/// min over the word ball of the given radius of dist(z, g w). Test oracle.
double brute_force_oracle(const DiskPoint& z, const DiskPoint& w, const SurfaceModel& surface,
                          int radius);

/// Maps z into the fundamental polygon: returns (z', g) with z' = g(z) inside
/// or on the boundary of P. Boundary ties go to the first matching candidate
/// in the fixed (anchor-displacement-sorted) enumeration of T^(k_star).
std::pair<DiskPoint, Isometry> reduce_to_fundamental(const DiskPoint& z,
                                                     const SurfaceModel& surface);

} // namespace geodist
