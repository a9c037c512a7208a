#pragma once

#include "zq/spectral.hpp"

#include <string>
#include <utility>
#include <vector>

namespace zq {

enum class SeminormKind { holder, lipschitz, zygmund, besov, bz, az, beltrami_weighted };

std::string kind_name(SeminormKind k);

struct SeminormValue {
    double value = 0;
    std::size_t grid_n = 0;
    SeminormKind kind = SeminormKind::holder;
    double param = 0;  // alpha or s where the kind takes one
    // bz/az: radii ladder actually used; beltrami_weighted: per-level (level, max)
    std::vector<double> radii;
    std::vector<std::pair<double, double>> profile;
};

// sup |f(x)-f(y)| / d(x,y)^alpha over all sample pairs, d the circle distance
// (at most pi). Complex samples use the modulus of the difference.
SeminormValue holder_seminorm(const PeriodicFunction& f, double alpha);
// Same quotient over an arbitrary point set on the circle (angles in any order).
double holder_seminorm_points(const std::vector<double>& x, const std::vector<cplx>& v, double alpha);

// sup |f(x+t)+f(x-t)-2f(x)| / (2t) for t a multiple of the spacing, t <= pi.
SeminormValue zygmund_seminorm(const PeriodicFunction& f);
// Same second difference evaluated at x = x_i, using values at x_i +- t
// obtained by a caller supplied evaluator; used for non-grid point sets.
double zygmund_seminorm_points(const std::vector<double>& x, const std::vector<double>& t,
                               const std::vector<cplx>& center, const std::vector<cplx>& plus,
                               const std::vector<cplx>& minus);

// sup_t t^{-s} max_x |Delta_t^m f(x)|, m = floor(s)+1, forward differences.
SeminormValue besov_seminorm(const PeriodicFunction& f, double s);

// Power series a_0 + a_1 z + ... evaluated on radii r = 1 - 2^{-q/4}.
// fixed_levels > 0 stops at j = fixed_levels instead of the tail criterion.
SeminormValue bz_norm_series(const std::vector<cplx>& a, int fixed_levels = 0);
SeminormValue az_norm_series(const std::vector<cplx>& a, int fixed_levels = 0);
SeminormValue bz_norm(const FourierCoefficients& interior, int fixed_levels = 0);
SeminormValue az_norm(const FourierCoefficients& interior, int fixed_levels = 0);

enum class FieldGeometry { disk_exterior, halfplane_periodic };

// Level-major samples: values[k * n_angle + j] at level k, angle/x index j.
// disk_exterior: levels are radii 1 < r_1 < ... ; halfplane_periodic: levels
// are depths y < 0 ordered with |y| decreasing toward the boundary.
struct BeltramiField {
    FieldGeometry geometry = FieldGeometry::disk_exterior;
    std::vector<double> levels;
    std::size_t n_angle = 0;
    std::vector<cplx> values;
    double sup_abs = 0;
    double ratio = 0.5;  // nominal refinement ratio of the level ladder

    BeltramiField() = default;
    BeltramiField(FieldGeometry g, std::vector<double> lv, std::size_t m, std::vector<cplx> v, double ratio = 0.5);

    cplx at(std::size_t level, std::size_t j) const { return values[level * n_angle + j]; }
    // node position: disk -> r e^{i theta}; half-plane -> x + i y
    cplx node(std::size_t level, std::size_t j) const;
};

BeltramiField sample_disk_field(const std::vector<double>& radii, std::size_t m,
                                const std::function<cplx(cplx)>& mu);

// max ((|z|-1)^{-alpha} v 1)|mu| (disk) or |y|^{-alpha}|mu| (half-plane);
// profile holds (level, weighted max over angle) per level.
SeminormValue beltrami_weighted_norm(const BeltramiField& mu, double alpha);

struct CzSplit {
    FourierCoefficients interior, exterior;
    double k_split = 0;       // fixed implementation constant
    double bz_interior = 0;   // B^Z norm of the interior part
    double bz_exterior = 0;   // B^Z norm of the exterior part, in w = 1/z
    double cz_norm = 0;       // zyg(Re f) + zyg(Im f) + max|f|
};

inline constexpr double kSplitConstant = 10.0;

CzSplit decompose_cz(const PeriodicFunction& f);

} // namespace zq
