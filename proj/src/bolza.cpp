#include "geodist/bolza.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace geodist {

namespace {

void check_genus(int genus) {
    if (genus < 2) {
        throw InvalidInputError("Bolza surfaces require genus >= 2");
    }
}

std::vector<DiskPoint> bolza_vertices(int genus, double radius_R) {
    const int n = 4 * genus;
    const double tau = std::tanh(0.5 * radius_R);
    std::vector<DiskPoint> vertices;
    vertices.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double angle = (k - 0.5) * std::numbers::pi / (2.0 * genus);
        vertices.emplace_back(tau * std::cos(angle), tau * std::sin(angle));
    }
    return vertices;
}

} // namespace

BolzaParams bolza_params(int genus) {
    check_genus(genus);
    const double cot = 1.0 / std::tan(std::numbers::pi / (4.0 * genus));
    BolzaParams params;
    params.genus = genus;
    params.radius_R = std::acosh(cot * cot);
    params.side_length_s = 2.0 * std::acosh(cot);
    params.diameter_D = std::acosh(cot);
    params.k_star = bolza_k_star(genus);
    if (genus == 2) params.k_min_known = 1;
    return params;
}

int bolza_k_star(int genus) {
    check_genus(genus);
    const double cot = 1.0 / std::tan(std::numbers::pi / (4.0 * genus));
    const double crossing = std::acosh(2.0 * std::cos(std::numbers::pi / (2.0 * genus)));
    return static_cast<int>(std::floor(1.0 + std::acosh(cot) / crossing));
}

SurfaceModel build_bolza(int genus, SurfaceConfig config) {
    const BolzaParams params = bolza_params(genus);
    const int n = 4 * genus;

    std::vector<DiskPoint> vertices = bolza_vertices(genus, params.radius_R);

    // gamma_k translates by s along the axis through the origin at angle
    // k*pi/2g, carrying side k+2g onto side k. The printed matrix has
    // determinant 1 - tanh^2(s/2); the Isometry constructor renormalizes.
    const double t = std::tanh(0.5 * params.side_length_s);
    std::vector<PairingTriple> pairing;
    pairing.reserve(n);
    for (int k = 0; k < 2 * genus; ++k) {
        const double angle = k * std::numbers::pi / (2.0 * genus);
        const Complex c_bar = t * std::polar(1.0, angle);
        const Isometry gamma(Complex(1.0, 0.0), std::conj(c_bar));
        pairing.push_back({k + 2 * genus, k, gamma});
        pairing.push_back({k, k + 2 * genus, gamma.inverse()});
    }

    // The diameter of S_g equals the polygon circumradius R (attained between
    // the center class and the vertex class), which is the tight valid bound
    // for the searches.
    return build_surface(FundamentalPolygon(std::move(vertices), std::move(pairing)),
                         params.radius_R, config);
}

DistanceResult bolza_fast_path_g2(const DiskPoint& z, const DiskPoint& w,
                                  const SurfaceModel& surface) {
    // Structural check: regular octagon with the Bolza vertex positions.
    const BolzaParams params = bolza_params(2);
    const std::vector<DiskPoint>& vertices = surface.polygon().vertices();
    if (vertices.size() != 8) {
        throw InvalidInputError("bolza_fast_path_g2: surface is not the genus-2 Bolza surface");
    }
    const std::vector<DiskPoint> expected = bolza_vertices(2, params.radius_R);
    for (int k = 0; k < 8; ++k) {
        if (std::abs(vertices[k].coord() - expected[k].coord()) > 1e-9) {
            throw InvalidInputError("bolza_fast_path_g2: surface is not the genus-2 Bolza surface");
        }
    }

    const std::vector<Isometry>& neighbors = surface.neighbor_set_T();
    DistanceResult result;
    double best_u = std::numeric_limits<double>::infinity();
    for (const Isometry& g : neighbors) {
        ++result.candidates_evaluated;
        const Complex image = g.apply_raw(w.coord());
        const double u = 2.0 * std::norm(z.coord() - image) /
                         ((1.0 - std::norm(z.coord())) * (1.0 - std::norm(image)));
        if (u < best_u) {
            best_u = u;
            result.minimizer = g;
        }
    }
    result.polygons_examined = neighbors.size();
    result.distance = acosh1p(best_u);
    return result;
}

} // namespace geodist
