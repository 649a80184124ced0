#include "geodist/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace geodist {

namespace {

// u = cosh(dist) - 1, computed without transcendentals.
double u_distance(Complex p, Complex q) {
    return 2.0 * std::norm(p - q) / ((1.0 - std::norm(p)) * (1.0 - std::norm(q)));
}

double foot_on_diameter(Complex zeta) {
    const double xi = zeta.real();
    if (xi == 0.0) return 0.0;
    const double c = (std::norm(zeta) + 1.0) / (2.0 * std::abs(xi));
    const double foot = 1.0 / (c + std::sqrt(std::max(c * c - 1.0, 0.0)));
    return xi > 0.0 ? foot : -foot;
}

// min over the sides of gP of u-distance from z, via per-side frames that skip
// the arclength bookkeeping of SegmentFrame.
double point_to_polygon_u(Complex z, const Isometry& g, const FundamentalPolygon& polygon,
                          std::vector<Complex>& image_scratch) {
    const int n = polygon.num_sides();
    image_scratch.resize(n);
    for (int k = 0; k < n; ++k) {
        image_scratch[k] = g.apply_raw(polygon.vertices()[k].coord());
    }
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        const Complex w0 = image_scratch[k];
        const Complex w1 = image_scratch[(k + 1) % n];
        const Complex qt = (w1 - w0) / (1.0 - std::conj(w0) * w1);
        const double r = std::abs(qt);
        const Complex phase = std::conj(qt) / r;
        const Complex zeta = phase * ((z - w0) / (1.0 - std::conj(w0) * z));
        const double foot = std::clamp(foot_on_diameter(zeta), 0.0, r);
        best = std::min(best, u_distance(zeta, Complex(foot, 0.0)));
    }
    return best;
}

} // namespace

double dist_point_to_polygon(const DiskPoint& z, const Isometry& g,
                             const FundamentalPolygon& polygon) {
    if (g.is_identity()) return 0.0;
    std::vector<Complex> scratch;
    return acosh1p(point_to_polygon_u(z.coord(), g, polygon, scratch));
}

DistanceResult distance_formula(const DiskPoint& z, const DiskPoint& w,
                                const SurfaceModel& surface) {
    const std::vector<FormulaCandidate>& candidates = surface.formula_candidates();
    const Complex zc = z.coord();
    const Complex wc = w.coord();
    const DiskPoint anchor = surface.polygon().anchor();
    const double dz = hyperbolic_distance(z, anchor);
    const double dw = hyperbolic_distance(w, anchor);

    DistanceResult result;
    result.polygons_examined = candidates.size();
    double best_u = std::numeric_limits<double>::infinity();
    double best_len = std::numeric_limits<double>::infinity();
    for (const FormulaCandidate& c : candidates) {
        // dist(z, g w) >= m - dist(z, anchor) - dist(w, anchor).
        if (c.m - dz - dw > best_len) break;
        ++result.candidates_evaluated;
        const double u = u_distance(zc, c.map.apply_raw(wc));
        if (u < best_u) {
            best_u = u;
            best_len = acosh1p(u);
            result.minimizer = c.map;
        }
    }
    result.distance = best_len;
    return result;
}

DistanceResult distance_algorithm(const DiskPoint& z, const DiskPoint& w,
                                  const SurfaceModel& surface, const AlgorithmOptions& options) {
    constexpr double kSlack = 1e-12;
    const FundamentalPolygon& polygon = surface.polygon();
    const std::vector<Isometry>& generators = surface.generators();
    const double bound = surface.search_bound();
    const Complex zc = z.coord();
    const Complex wc = w.coord();
    const Complex anchor = polygon.anchor().coord();

    // Children whose anchor is at least bound + circumradius away are at
    // polygon distance >= bound and would be dropped by the full test.
    const double shortcut = std::cosh(bound + polygon.circumradius() - kSlack) - 1.0;

    // The printed rule pushes only strictly farther children. A polygon whose
    // closest point to z is a vertex ties with its fan neighbors there, so the
    // default rule also pushes distance ties and dedups to terminate.
    const bool plateau = !options.printed_rule;
    const bool dedup = plateau || options.memoize;

    struct Entry {
        Isometry map;
        double dist_to_polygon;
    };
    std::vector<Entry> stack = {{Isometry::identity(), 0.0}};
    std::unordered_set<CanonicalKey, CanonicalKeyHash> pushed;
    if (dedup) {
        pushed.insert(canonical_key(Isometry::identity(), surface.config().key_tol));
    }

    DistanceResult result;
    double best_u = std::numeric_limits<double>::infinity();
    std::vector<Complex> scratch;
    while (!stack.empty()) {
        const Entry entry = stack.back();
        stack.pop_back();
        if (++result.polygons_examined > options.step_cap) {
            throw ResourceLimitError("distance_algorithm: step cap exceeded");
        }
        const double u = u_distance(zc, entry.map.apply_raw(wc));
        if (u < best_u) {
            best_u = u;
            result.minimizer = entry.map;
        }
        for (const Isometry& g : generators) {
            const Isometry child = compose(entry.map, g);
            if (u_distance(zc, child.apply_raw(anchor)) >= shortcut) continue;
            const double child_dist = acosh1p(point_to_polygon_u(zc, child, polygon, scratch));
            const bool farther = plateau ? child_dist > entry.dist_to_polygon - kSlack
                                         : child_dist - entry.dist_to_polygon > kSlack;
            if (farther && bound - child_dist > kSlack) {
                if (dedup &&
                    !pushed.insert(canonical_key(child, surface.config().key_tol)).second) {
                    continue;
                }
                stack.push_back({child, child_dist});
            }
        }
    }
    result.candidates_evaluated = result.polygons_examined;
    result.distance = acosh1p(best_u);
    return result;
}

double brute_force_oracle(const DiskPoint& z, const DiskPoint& w, const SurfaceModel& surface,
                          int radius) {
    const std::vector<Isometry> ball = word_ball(surface.generators(), radius,
                                                 surface.config().element_cap,
                                                 surface.config().key_tol);
    double best_u = std::numeric_limits<double>::infinity();
    for (const Isometry& g : ball) {
        best_u = std::min(best_u, u_distance(z.coord(), g.apply_raw(w.coord())));
    }
    return acosh1p(best_u);
}

std::pair<DiskPoint, Isometry> reduce_to_fundamental(const DiskPoint& z,
                                                     const SurfaceModel& surface) {
    for (const FormulaCandidate& c : surface.formula_candidates()) {
        const Isometry back = c.map.inverse();
        const DiskPoint moved(back.apply_raw(z.coord()));
        if (surface.polygon().contains(moved, 1e-12)) {
            return {moved, back};
        }
    }
    throw InvalidInputError("reduce_to_fundamental: point not covered by the enumerated "
                            "tessellation patch");
}

} // namespace geodist
