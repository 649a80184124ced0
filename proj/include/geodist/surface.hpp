#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "geodist/disk.hpp"
#include "geodist/isometry.hpp"

namespace geodist {

/// Side-pairing entry: `map` sends side `source` onto side `target`.
struct PairingTriple {
    int source;
    int target;
    Isometry map;
};

struct SurfaceConfig {
    double pairing_tol = 1e-9;        // endpoint match tolerance for pairings
    double adjacency_tol = 1e-7;      // vertex / side coincidence for T
    double key_tol = 1e-6;            // canonical key pitch
    double coincidence_tol = 1e-9;    // generic geometric coincidence (hyperbolic length)
    std::size_t element_cap = 10'000'000;
};

/// Convex fundamental polygon with side pairing. Vertices are listed
/// counterclockwise; side k runs from vertex k to vertex k+1 (mod n).
class FundamentalPolygon {
public:
    FundamentalPolygon(std::vector<DiskPoint> vertices, std::vector<PairingTriple> pairing,
                       double pairing_tol = 1e-9);

    int num_sides() const { return static_cast<int>(vertices_.size()); }
    const std::vector<DiskPoint>& vertices() const { return vertices_; }
    const std::vector<PairingTriple>& pairing() const { return pairing_; }

    GeodesicSegment side(int k) const;
    const SegmentFrame& side_frame(int k) const { return frames_[k]; }
    DiskPoint side_midpoint(int k) const { return midpoints_[k]; }
    double side_length(int k) const { return frames_[k].length(); }

    /// Reference point for radius bounds (Euclidean vertex mean).
    DiskPoint anchor() const { return anchor_; }
    /// max_k distance(anchor, v_k); every polygon point is within this of the anchor.
    double circumradius() const { return circumradius_; }

    bool contains(const DiskPoint& z, double tol = 1e-12) const;

private:
    std::vector<DiskPoint> vertices_;
    std::vector<PairingTriple> pairing_;
    std::vector<SegmentFrame> frames_;
    std::vector<DiskPoint> midpoints_;
    std::vector<double> orientation_; // sign of Im(frame(interior)) per side
    DiskPoint anchor_;
    double circumradius_ = 0.0;
};

/// delta: min distance over side pairs that share no vertex (needs >= 5 sides).
double min_nonadjacent_side_distance(const FundamentalPolygon& polygon);
/// epsilon: min distance from a side midpoint to the two adjacent sides.
double min_midpoint_adjacent_distance(const FundamentalPolygon& polygon);
/// diam(P) = max pairwise vertex distance.
double polygon_diameter(const FundamentalPolygon& polygon);

/// Breadth-first construction of T: all group elements mapping P onto itself
/// or an edge- or vertex-adjacent copy (identity included).
std::vector<Isometry> compute_neighbor_set_T(const FundamentalPolygon& polygon,
                                             const std::vector<Isometry>& generators,
                                             const SurfaceConfig& config = {});

int compute_k_star(double diameter_used, double shell_crossing_lower_bound);

/// Candidate for the finite distance formula: group element plus its anchor
/// displacement m = dist(anchor, g(anchor)).
struct FormulaCandidate {
    Isometry map;
    double m;
};

/// Quotient-surface model: polygon, generators, cached geometric constants,
/// and lazily built neighbor set / shells / formula candidates.
class SurfaceModel {
public:
    SurfaceModel(FundamentalPolygon polygon, std::optional<double> surface_diameter_override,
                 SurfaceConfig config);
    SurfaceModel(SurfaceModel&&) noexcept;
    SurfaceModel& operator=(SurfaceModel&&) noexcept;
    ~SurfaceModel();

    const FundamentalPolygon& polygon() const { return polygon_; }
    /// The N side-pairing maps (generators and inverses), in side order.
    const std::vector<Isometry>& generators() const { return generators_; }
    const SurfaceConfig& config() const { return config_; }

    double epsilon_min() const { return epsilon_min_; }
    /// Unavailable for polygons with fewer than 5 sides.
    std::optional<double> delta_min() const { return delta_min_; }
    std::optional<double> shell_crossing_lower_bound() const { return shell_bound_; }
    std::optional<int> k_star() const { return k_star_; }
    double polygon_diameter() const { return polygon_diameter_; }
    std::optional<double> surface_diameter_override() const { return diameter_override_; }

    /// Diameter bound used by the search methods: override if set, else diam(P).
    double search_bound() const { return diameter_override_.value_or(polygon_diameter_); }

    /// T (lazy, cached). Contains the identity; closed under inverse.
    const std::vector<Isometry>& neighbor_set_T() const;

    /// Shell L_k as group elements: T^k \ T^(k-1); shell(0) = {identity}.
    std::vector<Isometry> shell(int k) const;

    /// T^(k_star) filtered to elements that can realize a distance minimum,
    /// sorted by anchor displacement (identity first). Lazy, cached.
    const std::vector<FormulaCandidate>& formula_candidates() const;

    int effective_k_star() const;

private:
    const std::vector<std::vector<Isometry>>& shell_levels(int k) const;

    FundamentalPolygon polygon_;
    std::vector<Isometry> generators_;
    SurfaceConfig config_;
    double epsilon_min_ = 0.0;
    std::optional<double> delta_min_;
    std::optional<double> shell_bound_;
    std::optional<int> k_star_;
    double polygon_diameter_ = 0.0;
    std::optional<double> diameter_override_;

    struct LazyState;
    std::unique_ptr<LazyState> lazy_;
};

int compute_k_star(const SurfaceModel& surface);

/// Validates the polygon, computes all geometric constants, and prepares the
/// lazy tessellation caches.
SurfaceModel build_surface(FundamentalPolygon polygon,
                           std::optional<double> surface_diameter_override = {},
                           SurfaceConfig config = {});

} // namespace geodist
