#pragma once

#include <complex>

#include "geodist/errors.hpp"

namespace geodist {

using Complex = std::complex<double>;

/// A point of the Poincare unit disk, |coord| < 1.
class DiskPoint {
public:
    DiskPoint() : coord_(0.0, 0.0) {}
    explicit DiskPoint(Complex coord);
    DiskPoint(double re, double im) : DiskPoint(Complex(re, im)) {}

    Complex coord() const { return coord_; }
    double re() const { return coord_.real(); }
    double im() const { return coord_.imag(); }

private:
    Complex coord_;
};

/// Geodesic segment between two distinct disk points.
class GeodesicSegment {
public:
    GeodesicSegment(DiskPoint p, DiskPoint q);

    DiskPoint p() const { return p_; }
    DiskPoint q() const { return q_; }

private:
    DiskPoint p_;
    DiskPoint q_;
};

/// arccosh(1+u) evaluated without cancellation for small u.
double acosh1p(double u);

/// Hyperbolic distance for the metric ds^2 = 4|dz|^2/(1-|z|^2)^2.
double hyperbolic_distance(const DiskPoint& p, const DiskPoint& q);

/// Isometric chart that maps a segment onto [0, r] of the real diameter.
/// Precompute one per segment when many point queries hit the same segment.
class SegmentFrame {
public:
    explicit SegmentFrame(const GeodesicSegment& s);

    /// Image of z in the frame (segment start -> 0, end -> r() > 0 real).
    Complex map(const DiskPoint& z) const;
    /// Pull a frame point back to the disk.
    DiskPoint unmap(Complex w) const;

    double r() const { return r_; }            // Euclidean coordinate of the far endpoint
    double length() const { return length_; }  // hyperbolic length of the segment

    /// min over x in the segment of distance(z, x); exact, no iteration.
    double distance_to(const DiskPoint& z) const;

    /// Point at arclength fraction t in [0,1] from the start.
    DiskPoint point_at(double t) const;

    DiskPoint midpoint() const;

private:
    Complex base_;   // segment start
    Complex phase_;  // unit rotation applied after translating base_ to 0
    double r_;
    double length_;
};

double point_to_segment_distance(const DiskPoint& z, const GeodesicSegment& s);
double segment_to_segment_distance(const GeodesicSegment& s1, const GeodesicSegment& s2);
DiskPoint segment_midpoint(const GeodesicSegment& s);

} // namespace geodist
