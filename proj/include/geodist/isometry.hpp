#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "geodist/disk.hpp"

namespace geodist {

/// Orientation-preserving disk isometry [[a, conj(c)], [c, conj(a)]] with
/// |a|^2 - |c|^2 = 1, identified up to global sign.
class Isometry {
public:
    Isometry() : a_(1.0, 0.0), c_(0.0, 0.0) {}
    Isometry(Complex a, Complex c);

    static Isometry identity() { return Isometry(); }
    /// Translation moving the origin to t (|t| < 1).
    static Isometry translation_to(Complex t);

    Complex a() const { return a_; }
    Complex c() const { return c_; }

    DiskPoint apply(const DiskPoint& z) const;
    Complex apply_raw(Complex z) const { return (a_ * z + std::conj(c_)) / (c_ * z + std::conj(a_)); }

    Isometry inverse() const { return Isometry(std::conj(a_), -c_); }

    /// Deviation of |a|^2 - |c|^2 from 1.
    double determinant_defect() const;

    bool is_identity(double tol = 1e-9) const;

private:
    Complex a_;
    Complex c_;
};

/// Matrix product, renormalized to unit determinant.
Isometry compose(const Isometry& g1, const Isometry& g2);
inline Isometry operator*(const Isometry& g1, const Isometry& g2) { return compose(g1, g2); }

/// Discrete sign-fixed key: equal up to sign and noise below tol => same key.
struct CanonicalKey {
    std::array<std::int64_t, 5> cells;
    bool operator==(const CanonicalKey&) const = default;
};

struct CanonicalKeyHash {
    std::size_t operator()(const CanonicalKey& k) const;
};

CanonicalKey canonical_key(const Isometry& g, double tol = 1e-6);

/// Freely reduced word over generator indices.
struct Word {
    std::vector<int> letters;
};

/// Deduplicated set of all products of at most `radius` generators,
/// including the identity. The generator list must be closed under inverses.
std::vector<Isometry> word_ball(const std::vector<Isometry>& generators, int radius,
                                std::size_t element_cap = 10'000'000,
                                double key_tol = 1e-6);

/// Index of the inverse of each generator within the list (by key match).
std::vector<int> inverse_indices(const std::vector<Isometry>& generators,
                                 double key_tol = 1e-6);

} // namespace geodist
