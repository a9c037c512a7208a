#include "zq/beltrami.hpp"

#include "zq/error.hpp"
#include "zq/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace zq {

namespace {

std::vector<cplx> circle_points(std::size_t n) {
    std::vector<cplx> z(n);
    for (std::size_t j = 0; j < n; ++j) z[j] = std::polar(1.0, kTwoPi * double(j) / double(n));
    return z;
}

// continuous branch of arg along a closed curve
std::vector<double> unwrap_arg(const std::vector<cplx>& w) {
    std::vector<double> a(w.size());
    a[0] = std::arg(w[0]);
    for (std::size_t j = 1; j < w.size(); ++j) a[j] = a[j - 1] + std::arg(w[j] / w[j - 1]);
    return a;
}

// log of a nonvanishing periodic trace with winding zero, imaginary part
// continuous and centred in (-pi, pi]
PeriodicFunction periodic_log(const std::vector<cplx>& w) {
    auto a = unwrap_arg(w);
    double close = a.back() + std::arg(w[0] / w.back()) - a[0];
    if (std::abs(close) > 1e-6) throw DegeneracyError("trace winds around 0");
    double mean = 0;
    for (double x : a) mean += x;
    mean /= double(a.size());
    double shift = kTwoPi * std::round(mean / kTwoPi);
    std::vector<cplx> v(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) v[j] = cplx(std::log(std::abs(w[j])), a[j] - shift);
    return PeriodicFunction(std::move(v));
}

// lift of a degree-one curve around c with derivative d/dtheta arg(P - c)
CircleDiffeo lift_of(const std::vector<cplx>& P, const std::vector<cplx>& dP, cplx c) {
    const std::size_t n = P.size();
    auto zeta = circle_points(n);
    std::vector<cplx> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = P[j] - c;
    auto a = unwrap_arg(w);
    double k = std::round(a[0] / kTwoPi);
    std::vector<double> u(n), logd(n);
    for (std::size_t j = 0; j < n; ++j) {
        u[j] = a[j] - kTwoPi * k - kTwoPi * double(j) / double(n);
        double d = (zeta[j] * dP[j] / w[j]).real();
        if (!(d > 0)) throw DegeneracyError("boundary trace not increasing at sample " + std::to_string(j));
        logd[j] = std::log(d);
    }
    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = std::exp(logd[j]);
    return CircleDiffeo(PeriodicFunction::from_real(u), PeriodicFunction::from_real(d), PeriodicFunction::from_real(logd));
}

// algebraic least-squares circle through the points
std::pair<cplx, double> fit_circle(const std::vector<cplx>& p) {
    // minimize sum (x^2 + y^2 + D x + E y + F)^2
    std::array<std::array<double, 4>, 3> A{};
    for (auto z : p) {
        double x = z.real(), y = z.imag(), r = -(x * x + y * y);
        double row[3] = {x, y, 1.0};
        for (int i = 0; i < 3; ++i) {
            for (int k = 0; k < 3; ++k) A[i][k] += row[i] * row[k];
            A[i][3] += row[i] * r;
        }
    }
    for (int i = 0; i < 3; ++i) {
        int piv = i;
        for (int r = i + 1; r < 3; ++r)
            if (std::abs(A[r][i]) > std::abs(A[piv][i])) piv = r;
        std::swap(A[i], A[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == i) continue;
            double f = A[r][i] / A[i][i];
            for (int k = i; k < 4; ++k) A[r][k] -= f * A[i][k];
        }
    }
    double D = A[0][3] / A[0][0], E = A[1][3] / A[1][1], F = A[2][3] / A[2][2];
    cplx c(-D / 2, -E / 2);
    return {c, std::sqrt(std::norm(c) - F)};
}

void check_exterior(const Coefficient& mu, const char* who) {
    if (mu.interior_outer() > 0) throw DomainError(std::string(who) + " expects support outside the closed disk");
}

void check_interior(const Coefficient& mu, const char* who) {
    if (std::isfinite(mu.exterior_inner())) throw DomainError(std::string(who) + " expects support inside the disk");
}

// P(0) from direct sums, or from the grid when 0 is close to the sources
cplx value_at_zero(const QuasiconformalMap& F) {
    double near = std::numeric_limits<double>::infinity();
    for (auto w : F.src_w) near = std::min(near, std::abs(w));
    if (near > 4 * F.geo.h) return F.principal(0.0);
    return interpolate_cubic(F.geo, F.P, 0.0);
}

// log(zeta P'/(P - P(0))) on the circle
PeriodicFunction lambda_trace(const QuasiconformalMap& G, std::size_t n) {
    auto zeta = circle_points(n);
    auto P = G.principal(zeta);
    auto dP = G.principal_deriv(zeta);
    cplx p0 = value_at_zero(G);
    std::vector<cplx> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = zeta[j] * dP[j] / (P[j] - p0);
    return periodic_log(w);
}

} // namespace

BoundaryMap boundary_homeo(const Coefficient& mu, double h, std::size_t n, const SolverOptions& opt) {
    check_exterior(mu, "boundary_homeo");
    if (!is_power_of_two(n) || n < 16) throw SizeError("boundary sample count must be a power of two >= 16");
    BoundaryMap bm;
    if (mu.is_zero()) {
        bm.map = solve(sample_grid(mu, h, 1.0), Normalization::principal, opt);
        bm.h = bm.h_affine = CircleDiffeo::identity(n);
        return bm;
    }
    bm.map = solve(sample_grid(combine(mu, reflect(mu)), h), Normalization::principal, opt);
    auto zeta = circle_points(n);
    auto P = bm.map.principal(zeta);
    auto dP = bm.map.principal_deriv(zeta);
    auto [c, R] = fit_circle(P);
    bm.center = c;
    bm.radius = R;
    for (auto p : P) bm.circularity = std::max(bm.circularity, std::abs(std::abs(p - c) / R - 1.0));
    if (bm.circularity > 1e-4)
        throw SymmetryError("symmetric solution leaves the circle by " + std::to_string(bm.circularity));
    bm.h_affine = lift_of(P, dP, c);
    bm.h = normalize(bm.h_affine);
    return bm;
}

InverseCoefficient::InverseCoefficient(const Coefficient& mu, const BoundaryMap& H)
    : mu_(mu), geo_(H.map.geo), dp_(H.map.dP), g_(H.map.g), c_(H.center), R_(H.radius) {
    check_exterior(mu, "invert_coefficient");
    cg_.resize(geo_.size());
    for (std::size_t k = 0; k < geo_.size(); ++k) cg_[k] = H.map.P[k] - geo_.node(k);
    if (mu.is_zero()) return;
    lo_ = std::numeric_limits<double>::infinity();
    hi_ = 0;
    const std::size_t m = 512;
    for (auto [a, b] : mu.annuli) {
        if (a < 1) continue;
        for (double r : {a, b})
            for (std::size_t j = 0; j < m; ++j) {
                cplx z = std::polar(r, kTwoPi * double(j) / double(m));
                double ab = std::abs((z + interpolate_cubic(geo_, cg_, z) - c_) / R_);
                lo_ = std::min(lo_, ab);
                hi_ = std::max(hi_, ab);
            }
    }
    for (std::size_t k = 0; k < geo_.size(); ++k) {
        cplx z = geo_.node(k);
        if (std::abs(z) <= 1 || mu(z) == 0.0) continue;
        double ab = std::abs((H.map.P[k] - c_) / R_);
        lo_ = std::min(lo_, ab);
        hi_ = std::max(hi_, ab);
        double q = (ab - 1) / (std::abs(z) - 1);
        dist_ = std::max(dist_, std::max(q, 1 / q));
    }
    lo_ = 1 + (lo_ - 1) * (1 - 1e-3);
    hi_ *= 1 + 1e-3;
}

cplx InverseCoefficient::preimage(cplx w) const {
    const cplx target = R_ * w + c_;
    cplx z = target;
    for (int it = 0; it < 80; ++it) {
        cplx r = z + interpolate_cubic(geo_, cg_, z) - target;
        if (std::abs(r) <= 1e-14 * std::max(1.0, std::abs(target))) return z;
        cplx a = interpolate_cubic(geo_, dp_, z), b = interpolate_cubic(geo_, g_, z);
        z -= (std::conj(a) * r - b * std::conj(r)) / (std::norm(a) - std::norm(b));
    }
    cplx r = z + interpolate_cubic(geo_, cg_, z) - target;
    if (std::abs(r) > 1e-10 * std::max(1.0, std::abs(target)))
        throw SolverError("preimage Newton iteration stalled", 0);
    return z;
}

cplx InverseCoefficient::operator()(cplx w) const {
    double r = std::abs(w);
    if (r < lo_ || r > hi_) return 0.0;
    cplx z = preimage(w);
    cplx m = mu_(z);
    if (m == 0.0) return 0.0;
    cplx a = interpolate_cubic(geo_, dp_, z);
    return -m * a / std::conj(a);
}

double InverseCoefficient::distortion() const { return dist_; }

Coefficient InverseCoefficient::as_coefficient() const {
    if (mu_.is_zero()) return zero_coefficient();
    Coefficient c;
    auto self = std::make_shared<InverseCoefficient>(*this);
    c.fn = [self](cplx w) { return (*self)(w); };
    c.annuli = {{lo_, hi_}};
    c.label = "inverse(" + mu_.label + ")";
    if (mu_.envelope) {
        double s = 0;
        for (auto [a, b] : mu_.annuli) s = std::max(s, mu_.envelope(a, b));
        c.envelope = [s](double, double) { return s; };
    }
    return c;
}

PlanarGrid invert_coefficient(const Coefficient& mu, const BoundaryMap& H) {
    InverseCoefficient inv(mu, H);
    return sample_grid(inv.as_coefficient(), H.map.geo);
}

WeldingTriple welding_check(const Coefficient& mu, double h, std::size_t n, const SolverOptions& opt) {
    WeldingTriple W;
    BoundaryMap bm = boundary_homeo(mu, h, n, opt);
    W.h = bm.h_affine;
    W.circularity = bm.circularity;
    auto zeta = circle_points(n);

    QuasiconformalMap F = solve(sample_grid(mu, h), Normalization::principal, opt);
    auto fv = F.principal(zeta);
    auto fd = F.principal_deriv(zeta);
    W.f_trace = PeriodicFunction(fv);

    InverseCoefficient inv(mu, bm);
    Coefficient q = mu.is_zero() ? zero_coefficient() : reflect(inv.as_coefficient());
    QuasiconformalMap Q = solve(sample_grid(q, h, 1.0), Normalization::principal, opt);
    const cplx c = bm.center;
    const double R = bm.radius;
    const cplx I(0, 1);

    std::vector<cplx> eh(n);
    for (std::size_t j = 0; j < n; ++j) eh[j] = std::polar(1.0, W.h.node_value(j));
    auto qd = Q.principal_deriv(eh);
    auto gv = Q.principal(zeta);
    for (auto& v : gv) v = R * v + c;
    W.g_trace = PeriodicFunction(gv);

    std::vector<cplx> gdh(n);
    for (std::size_t j = 0; j < n; ++j) {
        cplx fp = I * zeta[j] * fd[j];
        cplx gp = R * I * eh[j] * qd[j];
        double hp = W.h.deriv.values[j].real();
        W.residual = std::max(W.residual, std::abs(std::log(fp / (gp * hp))));
        gdh[j] = R * qd[j];
    }

    // h recovered from the welding curve: G(e^{i phi}) = F(e^{i theta})
    std::vector<double> phi(n);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) {
            double p = W.h.lift.theta(j);
            for (int it = 0; it < 60; ++it) {
                cplx ep = std::polar(1.0, p);
                cplx r = R * Q.principal(ep) + c - fv[j];
                cplx d = R * I * ep * Q.principal_deriv(ep);
                double step = (std::conj(d) * r).real() / std::norm(d);
                p -= step;
                if (std::abs(step) < 1e-15) break;
            }
            phi[j] = p;
        }
    });
    for (std::size_t j = 0; j < n; ++j) {
        double d = std::remainder(phi[j] - W.h.node_value(j), kTwoPi);
        W.cross_check = std::max(W.cross_check, std::abs(d));
    }

    W.zyg_log_f = zygmund_seminorm(periodic_log(fd)).value;
    W.zyg_log_g_h = zygmund_seminorm(periodic_log(gdh)).value;
    W.zyg_log_h = zygmund_seminorm(W.h.log_deriv).value;
    return W;
}

PeriodicFunction lambda_map(const Coefficient& mu1, const Coefficient& mu2, double h, std::size_t n,
                            const SolverOptions& opt, double cover_radius) {
    check_interior(mu1, "lambda_map");
    check_exterior(mu2, "lambda_map");
    if (!is_power_of_two(n) || n < 16) throw SizeError("boundary sample count must be a power of two >= 16");
    Coefficient mu = combine(mu1, mu2);
    QuasiconformalMap G = solve(sample_grid(mu, h, std::max(cover_radius, 1.0)), Normalization::three_point, opt);
    return lambda_trace(G, n);
}

TranslationReport translation_relation(const Coefficient& mu1, const Coefficient& mu2, const Coefficient& nu,
                                       double h, std::size_t n, const SolverOptions& opt) {
    check_interior(nu, "translation_relation");
    TranslationReport T;
    Coefficient nus = reflect(nu);
    double cover = 1.25 * std::max({1.0, mu2.outer(), nus.outer()});
    T.rhs = lambda_map(mu1, mu2, h, n, opt, cover);
    if (nu.is_zero()) {
        T.lhs = T.rhs;
        T.rhs = affine_translation(CircleDiffeo::identity(n), T.rhs);
    } else {
        Coefficient sym = combine(nu, nus);
        PlanarGrid sg = sample_grid(sym, h, cover);
        const GridGeometry geo = sg.geo;
        QuasiconformalMap Hn = solve(sg, Normalization::three_point, opt);
        Coefficient mu = combine(mu1, mu2);
        auto Hz = Hn.grid_values();
        std::vector<cplx> comp(geo.size());
        for (std::size_t k = 0; k < geo.size(); ++k) {
            cplx m = mu(Hz[k]);
            cplx v = sg.values[k];
            cplx d = Hn.scale * Hn.dP[k];
            cplx th = std::conj(d) / d;
            comp[k] = (v + m * th) / (1.0 + std::conj(v) * m * th);
        }
        PlanarGrid cg = grid_from_values(geo, std::move(comp));
        QuasiconformalMap G = solve(cg, Normalization::three_point, opt);
        T.lhs = lambda_trace(G, n);

        auto zeta = circle_points(n);
        auto P = Hn.eval(zeta);
        auto dP = Hn.eval_deriv(zeta);
        CircleDiffeo hd = lift_of(P, dP, Hn.scale * value_at_zero(Hn) + Hn.shift);
        T.rhs = affine_translation(hd, T.rhs);
    }
    for (std::size_t j = 0; j < n; ++j) T.defect = std::max(T.defect, std::abs(T.lhs.values[j] - T.rhs.values[j]));
    T.lhs_seminorm = zygmund_seminorm(T.lhs).value;
    T.rhs_seminorm = zygmund_seminorm(T.rhs).value;
    return T;
}


} // namespace zq
