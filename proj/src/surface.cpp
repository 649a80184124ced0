#include "geodist/surface.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace geodist {

namespace {

double cross(Complex u, Complex v) {
    return u.real() * v.imag() - u.imag() * v.real();
}

// Direction (at the origin) of the geodesic from `from` toward `to`, after
// translating `from` to the origin. At the origin hyperbolic and Euclidean
// directions agree.
Complex tangent_direction(Complex from, Complex to) {
    const Complex t = (to - from) / (1.0 - std::conj(from) * to);
    return t / std::abs(t);
}

// Spatial hash over disk coordinates for O(1) vertex coincidence queries.
// Coincidence is verified hyperbolically: near the disk boundary, Euclidean
// proximity no longer implies hyperbolic proximity. The Euclidean cell walk
// cannot miss since euclidean distance <= hyperbolic distance / 2.
class VertexHash {
public:
    VertexHash(const std::vector<DiskPoint>& points, double tol) : tol_(tol) {
        for (const DiskPoint& p : points) {
            table_.insert({cell(p.coord()), p.coord()});
        }
    }

    bool near_any(Complex z) const {
        const auto [cx, cy] = cell(z);
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                auto range = table_.equal_range({cx + dx, cy + dy});
                for (auto it = range.first; it != range.second; ++it) {
                    const double u = 2.0 * std::norm(it->second - z) /
                                     ((1.0 - std::norm(it->second)) * (1.0 - std::norm(z)));
                    if (acosh1p(u) < tol_) return true;
                }
            }
        }
        return false;
    }

private:
    using Cell = std::pair<std::int64_t, std::int64_t>;
    struct CellHash {
        std::size_t operator()(const Cell& c) const {
            return std::hash<std::int64_t>()(c.first * 0x9e3779b97f4a7c15LL + c.second);
        }
    };

    Cell cell(Complex z) const {
        return {static_cast<std::int64_t>(std::floor(z.real() / tol_)),
                static_cast<std::int64_t>(std::floor(z.imag() / tol_))};
    }

    double tol_;
    std::unordered_multimap<Cell, Complex, CellHash> table_;
};

bool sides_adjacent(int i, int j, int n) {
    const int d = std::abs(i - j);
    return d == 0 || d == 1 || d == n - 1;
}

} // namespace

FundamentalPolygon::FundamentalPolygon(std::vector<DiskPoint> vertices,
                                       std::vector<PairingTriple> pairing, double pairing_tol)
    : vertices_(std::move(vertices)), pairing_(std::move(pairing)) {
    const int n = num_sides();
    if (n < 3) {
        throw InvalidInputError("FundamentalPolygon: need at least 3 vertices");
    }

    // Convexity and counterclockwise orientation via tangent cross products.
    int positive = 0, negative = 0;
    for (int k = 0; k < n; ++k) {
        const Complex v = vertices_[k].coord();
        const Complex next = vertices_[(k + 1) % n].coord();
        const Complex prev = vertices_[(k + n - 1) % n].coord();
        const double c = cross(tangent_direction(v, next), tangent_direction(v, prev));
        if (c > 1e-12) {
            ++positive;
        } else if (c < -1e-12) {
            ++negative;
        }
    }
    if (negative == n) {
        throw InvalidInputError("FundamentalPolygon: vertices must be counterclockwise");
    }
    if (positive != n) {
        throw InvalidInputError("FundamentalPolygon: polygon is not strictly convex");
    }

    // Side pairing: every side exactly once as source, inverse-closed, and
    // each map must send its source side's endpoints onto the target's.
    if (static_cast<int>(pairing_.size()) != n) {
        throw InvalidInputError("FundamentalPolygon: pairing must list every side exactly once");
    }
    std::vector<int> source_triple(n, -1);
    for (int t = 0; t < n; ++t) {
        const PairingTriple& triple = pairing_[t];
        if (triple.source < 0 || triple.source >= n || triple.target < 0 || triple.target >= n) {
            throw InvalidInputError("FundamentalPolygon: pairing side index out of range");
        }
        if (source_triple[triple.source] != -1) {
            throw InvalidInputError("FundamentalPolygon: side " + std::to_string(triple.source) +
                                    " appears twice as pairing source");
        }
        source_triple[triple.source] = t;
    }
    for (const PairingTriple& triple : pairing_) {
        const Complex a0 = vertices_[triple.source].coord();
        const Complex a1 = vertices_[(triple.source + 1) % n].coord();
        const Complex b0 = vertices_[triple.target].coord();
        const Complex b1 = vertices_[(triple.target + 1) % n].coord();
        const Complex i0 = triple.map.apply_raw(a0);
        const Complex i1 = triple.map.apply_raw(a1);
        const bool direct = std::abs(i0 - b0) < pairing_tol && std::abs(i1 - b1) < pairing_tol;
        const bool flipped = std::abs(i0 - b1) < pairing_tol && std::abs(i1 - b0) < pairing_tol;
        if (!direct && !flipped) {
            throw InvalidInputError("FundamentalPolygon: pairing map for side " +
                                    std::to_string(triple.source) +
                                    " does not carry its endpoints onto side " +
                                    std::to_string(triple.target));
        }
        const PairingTriple& back = pairing_[source_triple[triple.target]];
        if (back.target != triple.source ||
            !(canonical_key(back.map) == canonical_key(triple.map.inverse()))) {
            throw InvalidInputError("FundamentalPolygon: pairing is not closed under inverses");
        }
    }

    Complex mean(0.0, 0.0);
    for (const DiskPoint& v : vertices_) mean += v.coord();
    anchor_ = DiskPoint(mean / static_cast<double>(n));
    for (const DiskPoint& v : vertices_) {
        circumradius_ = std::max(circumradius_, hyperbolic_distance(anchor_, v));
    }

    frames_.reserve(n);
    midpoints_.reserve(n);
    orientation_.reserve(n);
    for (int k = 0; k < n; ++k) {
        frames_.emplace_back(side(k));
        midpoints_.push_back(frames_.back().midpoint());
        const double o = frames_.back().map(anchor_).imag();
        if (std::abs(o) < 1e-15) {
            throw InvalidInputError("FundamentalPolygon: anchor degenerate against side " +
                                    std::to_string(k));
        }
        orientation_.push_back(o > 0.0 ? 1.0 : -1.0);
    }
}

GeodesicSegment FundamentalPolygon::side(int k) const {
    const int n = num_sides();
    return GeodesicSegment(vertices_[k % n], vertices_[(k + 1) % n]);
}

bool FundamentalPolygon::contains(const DiskPoint& z, double tol) const {
    for (int k = 0; k < num_sides(); ++k) {
        if (orientation_[k] * frames_[k].map(z).imag() < -tol) return false;
    }
    return true;
}

double min_nonadjacent_side_distance(const FundamentalPolygon& polygon) {
    const int n = polygon.num_sides();
    if (n < 5) {
        throw InvalidInputError(
            "min_nonadjacent_side_distance: every side pair of a polygon with fewer than 5 "
            "sides may be adjacent");
    }
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 2; j < n; ++j) {
            if (sides_adjacent(i, j, n)) continue;
            best = std::min(best, segment_to_segment_distance(polygon.side(i), polygon.side(j)));
        }
    }
    return best;
}

double min_midpoint_adjacent_distance(const FundamentalPolygon& polygon) {
    const int n = polygon.num_sides();
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        const DiskPoint m = polygon.side_midpoint(k);
        best = std::min(best, polygon.side_frame((k + 1) % n).distance_to(m));
        best = std::min(best, polygon.side_frame((k + n - 1) % n).distance_to(m));
    }
    return best;
}

double polygon_diameter(const FundamentalPolygon& polygon) {
    const auto& v = polygon.vertices();
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            best = std::max(best, hyperbolic_distance(v[i], v[j]));
        }
    }
    return best;
}

namespace {

// gP touches P iff some vertex of gP coincides with a vertex of P. The
// pairing maps are validated to carry sides onto full sides, so the orbit
// tessellation is edge-to-edge: edge contact implies two vertex coincidences
// and vertex contact one. Comparing against P's own vertices keeps the test
// away from the disk boundary, where coordinates of deep images degenerate.
class AdjacencyTester {
public:
    AdjacencyTester(const FundamentalPolygon& polygon, double tol)
        : polygon_(polygon), vertex_hash_(polygon.vertices(), tol) {
        // Touching polygons have anchors within 2*circumradius of each other.
        const double reach = 2.0 * polygon.circumradius() + 10.0 * tol;
        cosh_reach_ = std::cosh(reach);
        anchor_ = polygon.anchor();
    }

    bool touches(const Isometry& g) const {
        const Complex moved = g.apply_raw(anchor_.coord());
        const double u = 2.0 * std::norm(moved - anchor_.coord()) /
                         ((1.0 - std::norm(moved)) * (1.0 - std::norm(anchor_.coord())));
        if (1.0 + u > cosh_reach_) return false;

        for (const DiskPoint& v : polygon_.vertices()) {
            if (vertex_hash_.near_any(g.apply_raw(v.coord()))) return true;
        }
        return false;
    }

private:
    const FundamentalPolygon& polygon_;
    VertexHash vertex_hash_;
    double cosh_reach_ = 0.0;
    DiskPoint anchor_;
};

} // namespace

std::vector<Isometry> compute_neighbor_set_T(const FundamentalPolygon& polygon,
                                             const std::vector<Isometry>& generators,
                                             const SurfaceConfig& config) {
    const AdjacencyTester tester(polygon, config.adjacency_tol);
    std::vector<Isometry> kept = {Isometry::identity()};
    std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
    seen.insert(canonical_key(Isometry::identity(), config.key_tol));

    std::size_t next = 0;
    while (next < kept.size()) {
        const Isometry current = kept[next++];
        for (const Isometry& g : generators) {
            const Isometry candidate = compose(current, g);
            if (!seen.insert(canonical_key(candidate, config.key_tol)).second) continue;
            if (seen.size() > config.element_cap) {
                throw ResourceLimitError("compute_neighbor_set_T: element cap exceeded; "
                                         "polygon data is likely not a valid side pairing");
            }
            if (tester.touches(candidate)) {
                kept.push_back(candidate);
            }
        }
    }
    return kept;
}

int compute_k_star(double diameter_used, double shell_crossing_lower_bound) {
    if (!(shell_crossing_lower_bound > 0.0)) {
        throw InvalidInputError("compute_k_star: shell crossing bound must be positive");
    }
    return static_cast<int>(std::floor(1.0 + diameter_used / shell_crossing_lower_bound));
}

int compute_k_star(const SurfaceModel& surface) {
    if (!surface.shell_crossing_lower_bound()) {
        throw InvalidInputError("compute_k_star: unavailable for polygons with fewer than 5 sides");
    }
    return compute_k_star(surface.search_bound(), *surface.shell_crossing_lower_bound());
}

struct SurfaceModel::LazyState {
    std::once_flag neighbor_once;
    std::vector<Isometry> neighbor_set;

    std::once_flag formula_once;
    std::vector<FormulaCandidate> formula;

    std::mutex shells_mutex;
    std::vector<std::vector<Isometry>> shell_levels; // cumulative new elements per level
};

SurfaceModel::SurfaceModel(SurfaceModel&&) noexcept = default;
SurfaceModel& SurfaceModel::operator=(SurfaceModel&&) noexcept = default;
SurfaceModel::~SurfaceModel() = default;

SurfaceModel::SurfaceModel(FundamentalPolygon polygon,
                           std::optional<double> surface_diameter_override, SurfaceConfig config)
    : polygon_(std::move(polygon)), config_(config), diameter_override_(surface_diameter_override),
      lazy_(std::make_unique<LazyState>()) {
    generators_.reserve(polygon_.num_sides());
    std::vector<const PairingTriple*> by_source(polygon_.num_sides());
    for (const PairingTriple& t : polygon_.pairing()) by_source[t.source] = &t;
    for (const PairingTriple* t : by_source) generators_.push_back(t->map);

    polygon_diameter_ = geodist::polygon_diameter(polygon_);
    epsilon_min_ = min_midpoint_adjacent_distance(polygon_);
    if (polygon_.num_sides() >= 5) {
        delta_min_ = min_nonadjacent_side_distance(polygon_);
        shell_bound_ = std::min(*delta_min_, 2.0 * epsilon_min_);
        if (!(*shell_bound_ > 0.0) || !std::isfinite(*shell_bound_)) {
            throw InvalidInputError("SurfaceModel: shell crossing bound must be positive");
        }
        k_star_ = geodist::compute_k_star(search_bound(), *shell_bound_);
    }
    if (diameter_override_) {
        if (!(*diameter_override_ > 0.0) || *diameter_override_ > polygon_diameter_ + 1e-9) {
            throw InvalidInputError(
                "SurfaceModel: surface diameter override must lie in (0, diam(P)]");
        }
    }
    if (!(epsilon_min_ > 0.0) || !std::isfinite(polygon_diameter_)) {
        throw InvalidInputError("SurfaceModel: degenerate polygon constants");
    }
}

const std::vector<Isometry>& SurfaceModel::neighbor_set_T() const {
    std::call_once(lazy_->neighbor_once, [this] {
        lazy_->neighbor_set = compute_neighbor_set_T(polygon_, generators_, config_);
    });
    return lazy_->neighbor_set;
}

const std::vector<std::vector<Isometry>>& SurfaceModel::shell_levels(int k) const {
    std::lock_guard<std::mutex> lock(lazy_->shells_mutex);
    auto& levels = lazy_->shell_levels;
    if (levels.empty()) {
        levels.push_back({Isometry::identity()});
    }
    if (static_cast<int>(levels.size()) > k) return levels;

    std::unordered_set<CanonicalKey, CanonicalKeyHash> known;
    std::size_t total = 0;
    for (const auto& level : levels) {
        for (const Isometry& g : level) known.insert(canonical_key(g, config_.key_tol));
        total += level.size();
    }
    const std::vector<Isometry>& T = neighbor_set_T();
    while (static_cast<int>(levels.size()) <= k) {
        std::vector<Isometry> fresh;
        for (const Isometry& prev : levels.back()) {
            for (const Isometry& t : T) {
                if (t.is_identity(config_.key_tol)) continue;
                const Isometry g = compose(prev, t);
                if (known.insert(canonical_key(g, config_.key_tol)).second) {
                    if (++total > config_.element_cap) {
                        throw ResourceLimitError("shell: element cap exceeded at level " +
                                                 std::to_string(levels.size()));
                    }
                    fresh.push_back(g);
                }
            }
        }
        levels.push_back(std::move(fresh));
    }
    return levels;
}

std::vector<Isometry> SurfaceModel::shell(int k) const {
    if (k < 0) {
        throw InvalidInputError("shell: k must be >= 0");
    }
    return shell_levels(k)[k];
}

int SurfaceModel::effective_k_star() const {
    if (!k_star_) {
        throw InvalidInputError("distance formula unavailable: polygon has fewer than 5 sides");
    }
    return *k_star_;
}

const std::vector<FormulaCandidate>& SurfaceModel::formula_candidates() const {
    std::call_once(lazy_->formula_once, [this] {
        const int k = effective_k_star();
        const DiskPoint anchor = polygon_.anchor();
        const double radius = polygon_.circumradius();
        const std::vector<Isometry>& T = neighbor_set_T();

        auto displacement = [&](const Isometry& g) {
            return hyperbolic_distance(anchor, DiskPoint(g.apply_raw(anchor.coord())));
        };

        double max_step = 0.0;
        for (const Isometry& t : T) max_step = std::max(max_step, displacement(t));

        // A candidate with m > bound satisfies dist(z, g w) >= m - 2*radius >
        // search_bound() >= true distance for every z, w in P, so it can never
        // realize the minimum. Prefixes get the slack of the remaining steps.
        constexpr double kSlack = 1e-6;
        const double final_bound = search_bound() + 2.0 * radius + kSlack;

        std::vector<FormulaCandidate> kept = {{Isometry::identity(), 0.0}};
        std::unordered_set<CanonicalKey, CanonicalKeyHash> known;
        known.insert(canonical_key(Isometry::identity(), config_.key_tol));
        std::size_t frontier_begin = 0;
        for (int level = 1; level <= k; ++level) {
            const double level_bound = final_bound + (k - level) * max_step;
            const std::size_t frontier_end = kept.size();
            for (std::size_t idx = frontier_begin; idx < frontier_end; ++idx) {
                const Isometry base = kept[idx].map;
                for (const Isometry& t : T) {
                    if (t.is_identity(config_.key_tol)) continue;
                    const Isometry g = compose(base, t);
                    const double m = displacement(g);
                    if (m > level_bound) continue;
                    if (!known.insert(canonical_key(g, config_.key_tol)).second) continue;
                    if (kept.size() >= config_.element_cap) {
                        throw ResourceLimitError(
                            "formula_candidates: element cap exceeded; |T^k| grows like "
                            "(4g)^(2k) in the worst case");
                    }
                    kept.push_back({g, m});
                }
            }
            frontier_begin = frontier_end;
        }
        std::erase_if(kept, [&](const FormulaCandidate& c) { return c.m > final_bound; });
        std::stable_sort(kept.begin(), kept.end(),
                         [](const FormulaCandidate& x, const FormulaCandidate& y) {
                             return x.m < y.m;
                         });
        lazy_->formula = std::move(kept);
    });
    return lazy_->formula;
}

SurfaceModel build_surface(FundamentalPolygon polygon,
                           std::optional<double> surface_diameter_override, SurfaceConfig config) {
    return SurfaceModel(std::move(polygon), surface_diameter_override, config);
}

} // namespace geodist
