#include "geodist/disk.hpp"

#include <algorithm>
#include <cmath>

namespace geodist {

namespace {

constexpr double kDegenerateSegmentTol = 1e-14;

} // namespace

DiskPoint::DiskPoint(Complex coord) : coord_(coord) {
    if (!(std::norm(coord) < 1.0)) {
        throw InvalidInputError("DiskPoint: |z| must be < 1, got |z| = " +
                                std::to_string(std::abs(coord)));
    }
}

GeodesicSegment::GeodesicSegment(DiskPoint p, DiskPoint q) : p_(p), q_(q) {
    if (std::abs(p.coord() - q.coord()) <= kDegenerateSegmentTol) {
        throw InvalidInputError("GeodesicSegment: endpoints coincide");
    }
}

double acosh1p(double u) {
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

double hyperbolic_distance(const DiskPoint& p, const DiskPoint& q) {
    const double q2 = std::norm(p.coord() - q.coord());
    const double prod = (1.0 - std::norm(p.coord())) * (1.0 - std::norm(q.coord()));
    const double u = 2.0 * q2 / prod;
    // Below distance ~1e-6 the asymptotic form avoids arccosh cancellation.
    if (u < 5e-13) {
        return 2.0 * std::sqrt(q2 / prod);
    }
    return acosh1p(u);
}

namespace {

// Disk translation taking a -> 0: z |-> (z - a)/(1 - conj(a) z).
Complex translate_to_origin(Complex a, Complex z) {
    return (z - a) / (1.0 - std::conj(a) * z);
}

Complex translate_from_origin(Complex a, Complex z) {
    return (z + a) / (1.0 + std::conj(a) * z);
}

// Foot of the hyperbolic perpendicular from zeta onto the real diameter.
double diameter_foot(Complex zeta) {
    const double xi = zeta.real();
    if (xi == 0.0) return 0.0;
    const double axi = std::abs(xi);
    const double c = (std::norm(zeta) + 1.0) / (2.0 * axi);
    // c >= 1 always; the reciprocal form has no cancellation.
    const double foot = 1.0 / (c + std::sqrt(std::max(c * c - 1.0, 0.0)));
    return xi > 0.0 ? foot : -foot;
}

double distance_to_real_point(Complex zeta, double x) {
    return hyperbolic_distance(DiskPoint(zeta), DiskPoint(x, 0.0));
}

} // namespace

SegmentFrame::SegmentFrame(const GeodesicSegment& s) {
    base_ = s.p().coord();
    const Complex qt = translate_to_origin(base_, s.q().coord());
    const double aq = std::abs(qt);
    phase_ = std::conj(qt) / aq;
    r_ = aq;
    length_ = 2.0 * std::atanh(aq);
}

Complex SegmentFrame::map(const DiskPoint& z) const {
    return phase_ * translate_to_origin(base_, z.coord());
}

DiskPoint SegmentFrame::unmap(Complex w) const {
    return DiskPoint(translate_from_origin(base_, w / phase_));
}

double SegmentFrame::distance_to(const DiskPoint& z) const {
    const Complex zeta = map(z);
    const double foot = std::clamp(diameter_foot(zeta), 0.0, r_);
    return distance_to_real_point(zeta, foot);
}

DiskPoint SegmentFrame::point_at(double t) const {
    return unmap(Complex(std::tanh(0.5 * t * length_), 0.0));
}

DiskPoint SegmentFrame::midpoint() const {
    return unmap(Complex(std::tanh(0.25 * length_), 0.0));
}

double point_to_segment_distance(const DiskPoint& z, const GeodesicSegment& s) {
    return SegmentFrame(s).distance_to(z);
}

namespace {

// Distance from s2 is convex along the geodesic s1, so golden-section applies.
double directed_segment_distance(const SegmentFrame& f1, const SegmentFrame& f2) {
    constexpr double kInvPhi = 0.6180339887498949;
    constexpr double kParamTol = 1e-12;

    auto eval = [&](double t) { return f2.distance_to(f1.point_at(t)); };

    double a = 0.0, b = 1.0;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = eval(c), fd = eval(d);
    while (b - a > kParamTol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = eval(d);
        }
    }
    return std::min({eval(0.0), eval(1.0), fc, fd});
}

} // namespace

double segment_to_segment_distance(const GeodesicSegment& s1, const GeodesicSegment& s2) {
    const SegmentFrame f1(s1), f2(s2);
    return std::min(directed_segment_distance(f1, f2), directed_segment_distance(f2, f1));
}

DiskPoint segment_midpoint(const GeodesicSegment& s) {
    return SegmentFrame(s).midpoint();
}

} // namespace geodist
