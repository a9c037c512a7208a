#pragma once

#include "zq/diffeo.hpp"
#include "zq/planar.hpp"

#include <memory>
#include <string>
#include <vector>

namespace zq {

// punctured: midpoint rule with the singular cell dropped.
// corrected: punctured rule minus a local second-difference term that cancels
// its leading h^2 error (constants fitted to the lattice, see kLatticeSum).
enum class Quadrature { punctured, corrected };

// principal: F = z + O(1/z).
// disk_conformal: F(0) = 0, F'(0) = 1.
// three_point: F fixes 0, 1, infinity.
enum class Normalization { principal, disk_conformal, three_point };

std::string normalization_name(Normalization n);

// lim_{eps -> 0} sum over nonzero lattice points p of (conj p / p)^2 e^{-eps |p|^2}
inline constexpr double kLatticeSum = 1.596422649830835;

struct SolverOptions {
    Quadrature quadrature = Quadrature::corrected;
    int max_iterations = 200;
    double tolerance = 1e-8;   // required fixed-point residual
    double target = 1e-13;     // iteration stops early below this
    double mu_cap = 0.7;
};

// Solution of dbar F = mu dF with F = a P + b, P = z + C g, g = dbar P.
struct QuasiconformalMap {
    GridGeometry geo;
    std::vector<cplx> g;     // dbar P on the grid
    std::vector<cplx> P;     // principal solution on the grid
    std::vector<cplx> dP;    // dP = 1 + B g on the grid
    Normalization normalization = Normalization::principal;
    cplx scale = 1.0, shift = 0.0;
    int iterations = 0;
    double residual = 0;
    double contraction = 0;
    Quadrature quadrature = Quadrature::corrected;

    // nonzero sources for off-grid evaluation
    std::vector<cplx> src_w, src_g;

    cplx principal(cplx z) const;
    cplx principal_deriv(cplx z) const;   // complex derivative, valid off the support
    std::vector<cplx> principal(const std::vector<cplx>& z) const;
    std::vector<cplx> principal_deriv(const std::vector<cplx>& z) const;
    cplx eval(cplx z) const { return scale * principal(z) + shift; }
    std::vector<cplx> eval(const std::vector<cplx>& z) const;
    std::vector<cplx> eval_deriv(const std::vector<cplx>& z) const;
    std::vector<cplx> grid_values() const;  // normalized F at the nodes
};

QuasiconformalMap solve(const PlanarGrid& mu, Normalization norm = Normalization::principal,
                        const SolverOptions& opt = {});

// Discrete Beurling operator applied once (exposed for tests).
std::vector<cplx> apply_beurling(const GridGeometry& geo, const std::vector<cplx>& g, Quadrature q);
// Cauchy transform (1/pi) int g(w)/(z-w) dA at the nodes.
std::vector<cplx> apply_cauchy(const GridGeometry& geo, const std::vector<cplx>& g, Quadrature q);

// Tensor cubic interpolation of node data.
cplx interpolate_cubic(const GridGeometry& geo, const std::vector<cplx>& v, cplx z);

struct ConformalJet {
    std::vector<cplx> a;  // Taylor coefficients a_0 .. a_{M-1}
    double rho = 0;       // extraction radius
    double tail = 0;      // |a_{M-1}| rho^{M-1} / max_m |a_m| rho^m
    std::vector<cplx> d1, d2, d3, N, S;  // F', F'', F''', N_F, S_F

    static ConformalJet from_coefficients(std::vector<cplx> a, double rho = 0);
    static cplx eval(const std::vector<cplx>& s, cplx z);
    // S_F by the second route F'''/F' - 3/2 (F''/F')^2
    std::vector<cplx> schwarzian_direct() const;
    std::vector<cplx> log_deriv() const;  // log F' with F'(0) normalized away
};

namespace series {
std::vector<cplx> derivative(const std::vector<cplx>& a);
std::vector<cplx> multiply(const std::vector<cplx>& a, const std::vector<cplx>& b);
std::vector<cplx> divide(const std::vector<cplx>& a, const std::vector<cplx>& b);
std::vector<cplx> log1(const std::vector<cplx>& b);  // log(b / b_0)
} // namespace series

// Taylor coefficients of F (disk_conformal) from samples on |z| = rho.
ConformalJet conformal_jet(const QuasiconformalMap& F, double rho = 0, std::size_t samples = 512);

struct BoundaryMap {
    CircleDiffeo h;          // three-point normalized
    CircleDiffeo h_affine;   // lift of (P - c)/R on the unit circle
    cplx center = 0;
    double radius = 1;
    double circularity = 0;  // max | |P - c|/R - 1 | on the circle
    QuasiconformalMap map;   // symmetric solve
};

// h_mu from the reflection-symmetric extension of mu (support in |z| > 1).
BoundaryMap boundary_homeo(const Coefficient& mu, double h, std::size_t n, const SolverOptions& opt = {});

// Pointwise mu^{-1}(w) = -mu(z) dH(z)/conj(dH(z)) at w = H(z), H = (P - c)/R.
class InverseCoefficient {
public:
    InverseCoefficient(const Coefficient& mu, const BoundaryMap& H);
    cplx operator()(cplx w) const;
    cplx preimage(cplx w) const;        // z with H(z) = w
    double distortion() const;          // measured over support nodes
    Coefficient as_coefficient() const; // exterior support annulus
private:
    Coefficient mu_;
    GridGeometry geo_;
    std::vector<cplx> cg_, dp_, g_;     // P - z, dP, dbar P on the grid
    cplx c_ = 0;
    double R_ = 1;
    double lo_ = 0, hi_ = 0;            // |H| range over the support
    double dist_ = 1;
};

PlanarGrid invert_coefficient(const Coefficient& mu, const BoundaryMap& H);

struct WeldingTriple {
    CircleDiffeo h;               // h_mu, normalized at infinity through (P - c)/R
    PeriodicFunction f_trace;     // F_mu on the circle
    PeriodicFunction g_trace;     // G on the circle, at the grid angles
    double residual = 0;          // max |log f' - log g'(h) - log h'|
    double cross_check = 0;       // max |h from the welding curve - h|
    double zyg_log_f = 0, zyg_log_g_h = 0, zyg_log_h = 0;
    double circularity = 0;
};

WeldingTriple welding_check(const Coefficient& mu, double h, std::size_t n, const SolverOptions& opt = {});

// Lambda(mu1, mu2) = log(zeta G'(zeta)/G(zeta)) at zeta = e^{i theta_j},
// G the solution fixing 0, 1, infinity with coefficient mu1 in the disk and
// mu2 outside. This is the log-derivative of the complex lift -i log G(e^{ix}).
PeriodicFunction lambda_map(const Coefficient& mu1, const Coefficient& mu2, double h, std::size_t n,
                            const SolverOptions& opt = {}, double cover_radius = 0);

// Jet-side boundary trace log(zeta F'/F) of F_mu at n angles.
PeriodicFunction jet_boundary_log(const ConformalJet& jet, std::size_t n);

struct TranslationReport {
    double defect = 0;
    double lhs_seminorm = 0, rhs_seminorm = 0;
    PeriodicFunction lhs, rhs;
};

// Lambda(mu1 * nu, mu2 * nu^*) against Q_h Lambda(mu1, mu2), h = H(nu) on the circle.
TranslationReport translation_relation(const Coefficient& mu1, const Coefficient& mu2, const Coefficient& nu,
                                       double h, std::size_t n, const SolverOptions& opt = {});

} // namespace zq
