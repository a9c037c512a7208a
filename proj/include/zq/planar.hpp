#pragma once

#include "zq/fft.hpp"
#include "zq/spaces.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace zq {

// Closed-form Beltrami coefficient supported in a union of closed annuli
// {a <= |z| <= b} that avoid the unit circle.
struct Coefficient {
    std::function<cplx(cplx)> fn;
    std::vector<std::pair<double, double>> annuli;
    std::string label;

    cplx operator()(cplx z) const;
    bool is_zero() const { return annuli.empty(); }
    double outer() const;             // largest support radius (0 if none)
    double exterior_inner() const;    // smallest support radius above 1 (inf if none)
    double interior_outer() const;    // largest support radius below 1 (0 if none)
    // closed-form sup of |mu| on {a <= |z| <= b}, when the fixture knows one
    std::function<double(double, double)> envelope;
};

Coefficient zero_coefficient();
// mu of z -> rho(|z|) z/|z| with rho(r) = r + amp L sin^4(pi s)/(4 pi c3),
// s = (r - r0)/L, c3 = 3 sqrt(3)/16, so that rho' peaks at 1 + amp.
Coefficient radial_stretch(double r0, double r1, double amp);
cplx radial_stretch_map(cplx z, double r0, double r1, double amp);
// amp sin^4(pi s) e^{i m theta} on r0 <= |z| <= r1
Coefficient annulus_mode(double r0, double r1, double amp, int m);
// mu*(z) = conj(mu(1/conj z)) z^2 / conj(z)^2
Coefficient reflect(const Coefficient& mu);
// sum of coefficients with disjoint supports
Coefficient combine(const Coefficient& a, const Coefficient& b);

// Square grid of cell centres z = ((i - (M-1)/2) h, (j - (M-1)/2) h),
// flat index i * M + j.
struct GridGeometry {
    double h = 0;
    std::size_t M = 0;

    static GridGeometry covering(double h, double radius);
    double offset() const { return 0.5 * double(M - 1) * h; }
    cplx node(std::size_t i, std::size_t j) const {
        return {double(i) * h - offset(), double(j) * h - offset()};
    }
    cplx node(std::size_t k) const { return node(k / M, k % M); }
    std::size_t size() const { return M * M; }
    bool operator==(const GridGeometry& o) const { return h == o.h && M == o.M; }
};

struct PlanarGrid {
    GridGeometry geo;
    std::vector<cplx> values;
    double r_s = 0, r_e = 0;  // exterior support annulus (0,0 if none)
    double sup_abs = 0;
};

// Samples mu at the nodes of a grid covering its support (or the given radius).
PlanarGrid sample_grid(const Coefficient& mu, double h, double cover_radius = 0);
PlanarGrid sample_grid(const Coefficient& mu, const GridGeometry& geo);
// Grid from explicit node values; support annulus measured from the nodes.
PlanarGrid grid_from_values(const GridGeometry& geo, std::vector<cplx> values);

// Polar sampling of the exterior part on radii for the weighted norms.
BeltramiField polar_field(const Coefficient& mu, std::size_t n_angle, int levels);

} // namespace zq
