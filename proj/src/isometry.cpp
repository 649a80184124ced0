#include "geodist/isometry.hpp"

#include <cmath>
#include <unordered_set>

namespace geodist {

Isometry::Isometry(Complex a, Complex c) : a_(a), c_(c) {
    const double det = std::norm(a_) - std::norm(c_);
    if (!(det > 0.0) || !std::isfinite(det)) {
        throw InvalidInputError("Isometry: |a|^2 - |c|^2 must be positive");
    }
    const double scale = std::sqrt(det);
    a_ /= scale;
    c_ /= scale;
}

Isometry Isometry::translation_to(Complex t) {
    if (!(std::norm(t) < 1.0)) {
        throw InvalidInputError("Isometry::translation_to: |t| must be < 1");
    }
    return Isometry(Complex(1.0, 0.0), std::conj(t));
}

DiskPoint Isometry::apply(const DiskPoint& z) const {
    return DiskPoint(apply_raw(z.coord()));
}

double Isometry::determinant_defect() const {
    return std::abs(std::norm(a_) - std::norm(c_) - 1.0);
}

bool Isometry::is_identity(double tol) const {
    return std::abs(c_) <= tol && std::abs(a_.imag()) <= tol &&
           std::abs(std::abs(a_.real()) - 1.0) <= tol;
}

Isometry compose(const Isometry& g1, const Isometry& g2) {
    const Complex a = g1.a() * g2.a() + std::conj(g1.c()) * g2.c();
    const Complex c = g1.c() * g2.a() + std::conj(g1.a()) * g2.c();
    return Isometry(a, c);
}

std::size_t CanonicalKeyHash::operator()(const CanonicalKey& k) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t v : k.cells) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

CanonicalKey canonical_key(const Isometry& g, double tol) {
    // Deep group elements have entries of size e^(depth); a raw grid of pitch
    // tol drops below their floating-point granularity and splits equal
    // elements. Key instead on the direction (a, c)/|a| (bounded entries,
    // relative precision) together with log|a|.
    const double scale = std::abs(g.a());
    const std::array<double, 5> e = {g.a().real() / scale, g.a().imag() / scale,
                                     g.c().real() / scale, g.c().imag() / scale,
                                     std::log(scale)};
    CanonicalKey key{};
    for (int i = 0; i < 5; ++i) {
        key.cells[i] = std::llround(e[i] / tol);
    }
    // Sign quotient: (a, c) and (-a, -c) negate the direction cells but keep
    // log|a|. llround is odd, so the mirrored tuple is the exact negation.
    std::array<std::int64_t, 5> mirrored = key.cells;
    for (int i = 0; i < 4; ++i) mirrored[i] = -mirrored[i];
    if (std::lexicographical_compare(mirrored.begin(), mirrored.end(), key.cells.begin(),
                                     key.cells.end())) {
        key.cells = mirrored;
    }
    return key;
}

std::vector<int> inverse_indices(const std::vector<Isometry>& generators, double key_tol) {
    std::vector<int> inv(generators.size(), -1);
    const CanonicalKey id_key = canonical_key(Isometry::identity(), key_tol);
    for (std::size_t i = 0; i < generators.size(); ++i) {
        for (std::size_t j = 0; j < generators.size(); ++j) {
            if (canonical_key(compose(generators[i], generators[j]), key_tol) == id_key) {
                inv[i] = static_cast<int>(j);
                break;
            }
        }
        if (inv[i] < 0) {
            throw InvalidInputError("generator list is not closed under inverses");
        }
    }
    return inv;
}

std::vector<Isometry> word_ball(const std::vector<Isometry>& generators, int radius,
                                std::size_t element_cap, double key_tol) {
    if (radius < 0) {
        throw InvalidInputError("word_ball: radius must be >= 0");
    }
    std::vector<Isometry> ball = {Isometry::identity()};
    std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
    seen.insert(canonical_key(ball[0], key_tol));
    if (radius == 0 || generators.empty()) return ball;

    const std::vector<int> inv = inverse_indices(generators, key_tol);

    struct Node {
        Isometry g;
        int last; // generator index of the final letter, -1 for identity
    };
    std::vector<Node> frontier = {{Isometry::identity(), -1}};
    for (int level = 1; level <= radius; ++level) {
        std::vector<Node> next;
        next.reserve(frontier.size() * generators.size());
        for (const Node& node : frontier) {
            for (std::size_t i = 0; i < generators.size(); ++i) {
                if (node.last >= 0 && inv[node.last] == static_cast<int>(i)) continue;
                Isometry g = compose(node.g, generators[i]);
                if (seen.insert(canonical_key(g, key_tol)).second) {
                    if (ball.size() >= element_cap) {
                        throw ResourceLimitError("word_ball: element cap (" +
                                                 std::to_string(element_cap) + ") exceeded");
                    }
                    ball.push_back(g);
                    next.push_back({g, static_cast<int>(i)});
                }
            }
        }
        frontier = std::move(next);
    }
    return ball;
}

} // namespace geodist
