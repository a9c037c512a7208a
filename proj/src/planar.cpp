#include "zq/planar.hpp"

#include "zq/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zq {

namespace {

const double kC3 = 3.0 * std::sqrt(3.0) / 16.0;  // max of sin^3 cos

double bump(double r, double r0, double r1) {
    double s = (r - r0) / (r1 - r0);
    if (s <= 0 || s >= 1) return 0;
    double v = std::sin(kPi * s);
    return v * v * v * v;
}

double rho(double r, double r0, double r1, double amp) {
    return r + amp * (r1 - r0) * bump(r, r0, r1) / (4 * kPi * kC3);
}

double drho(double r, double r0, double r1, double amp) {
    double s = (r - r0) / (r1 - r0);
    if (s <= 0 || s >= 1) return 1;
    double sn = std::sin(kPi * s), cs = std::cos(kPi * s);
    return 1 + amp * sn * sn * sn * cs / kC3;
}

// sup of a radial profile on [a, b]: dense scan, then golden section
double radial_sup(const std::function<double(double)>& p, double a, double b) {
    if (!(b > a)) return a == b ? p(a) : 0.0;
    const int K = 2000;
    int best = 0;
    double bv = -1;
    for (int k = 0; k <= K; ++k) {
        double v = p(a + (b - a) * k / K);
        if (v > bv) {
            bv = v;
            best = k;
        }
    }
    double lo = a + (b - a) * std::max(0, best - 1) / K, hi = a + (b - a) * std::min(K, best + 1) / K;
    const double g = 0.6180339887498949;
    for (int it = 0; it < 80; ++it) {
        double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
        if (p(c) > p(d)) hi = d; else lo = c;
    }
    return std::max(bv, p(0.5 * (lo + hi)));
}

} // namespace

cplx Coefficient::operator()(cplx z) const {
    if (annuli.empty()) return 0.0;
    double r = std::abs(z);
    for (auto [a, b] : annuli)
        if (r >= a && r <= b) return fn(z);
    return 0.0;
}

double Coefficient::outer() const {
    double m = 0;
    for (auto [a, b] : annuli) m = std::max(m, b);
    return m;
}

double Coefficient::exterior_inner() const {
    double m = std::numeric_limits<double>::infinity();
    for (auto [a, b] : annuli)
        if (a > 1) m = std::min(m, a);
    return m;
}

double Coefficient::interior_outer() const {
    double m = 0;
    for (auto [a, b] : annuli)
        if (b < 1) m = std::max(m, b);
    return m;
}

Coefficient zero_coefficient() {
    Coefficient c;
    c.fn = [](cplx) { return cplx(0); };
    c.label = "zero";
    c.envelope = [](double, double) { return 0.0; };
    return c;
}

cplx radial_stretch_map(cplx z, double r0, double r1, double amp) {
    double r = std::abs(z);
    if (r == 0) return 0;
    return z * (rho(r, r0, r1, amp) / r);
}

Coefficient radial_stretch(double r0, double r1, double amp) {
    if (!(r0 > 1 && r1 > r0)) throw DomainError("radial stretch needs 1 < r0 < r1");
    Coefficient c;
    auto mod = [=](double r) {
        double rp = drho(r, r0, r1, amp), rr = rho(r, r0, r1, amp);
        return (r * rp - rr) / (r * rp + rr);
    };
    c.fn = [=](cplx z) {
        double r = std::abs(z);
        cplx e = z / r;
        return e * e * mod(r);
    };
    c.annuli = {{r0, r1}};
    c.label = "radial-stretch";
    c.envelope = [=](double a, double b) {
        a = std::max(a, r0);
        b = std::min(b, r1);
        if (a > b) return 0.0;
        return radial_sup([&](double r) { return std::abs(mod(r)); }, a, b);
    };
    return c;
}

Coefficient annulus_mode(double r0, double r1, double amp, int m) {
    if (!(r1 > r0 && r0 > 0 && (r0 > 1 || r1 < 1))) throw DomainError("annulus must avoid the unit circle");
    Coefficient c;
    c.fn = [=](cplx z) {
        double r = std::abs(z);
        return amp * bump(r, r0, r1) * std::pow(z / r, m);
    };
    c.annuli = {{r0, r1}};
    c.label = "annulus-mode";
    c.envelope = [=](double a, double b) {
        a = std::max(a, r0);
        b = std::min(b, r1);
        if (a > b) return 0.0;
        double mid = 0.5 * (r0 + r1);
        if (a <= mid && mid <= b) return std::abs(amp);
        return std::abs(amp) * std::max(bump(a, r0, r1), bump(b, r0, r1));
    };
    return c;
}

Coefficient reflect(const Coefficient& mu) {
    Coefficient c;
    auto f = mu.fn;
    c.fn = [f](cplx z) {
        cplx w = 1.0 / std::conj(z);
        cplx q = z / std::conj(z);
        return std::conj(f(w)) * q * q;
    };
    for (auto [a, b] : mu.annuli) c.annuli.emplace_back(1.0 / b, 1.0 / a);
    c.label = mu.label + "*";
    if (mu.envelope) {
        auto e = mu.envelope;
        c.envelope = [e](double a, double b) { return e(1.0 / b, a > 0 ? 1.0 / a : 1e300); };
    }
    return c;
}

Coefficient combine(const Coefficient& a, const Coefficient& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    for (auto [p, q] : a.annuli)
        for (auto [s, t] : b.annuli)
            if (!(q < s || t < p)) throw DomainError("combined coefficients overlap");
    Coefficient c;
    c.annuli = a.annuli;
    c.annuli.insert(c.annuli.end(), b.annuli.begin(), b.annuli.end());
    auto fa = a, fb = b;
    c.fn = [fa, fb](cplx z) {
        double r = std::abs(z);
        for (auto [p, q] : fa.annuli)
            if (r >= p && r <= q) return fa.fn(z);
        return fb.fn(z);
    };
    c.label = a.label + "+" + b.label;
    if (a.envelope && b.envelope) {
        auto ea = a.envelope, eb = b.envelope;
        c.envelope = [ea, eb](double p, double q) { return std::max(ea(p, q), eb(p, q)); };
    }
    return c;
}

GridGeometry GridGeometry::covering(double h, double radius) {
    if (!(h > 0)) throw DomainError("grid spacing must be positive");
    GridGeometry g;
    g.h = h;
    g.M = std::size_t(std::ceil(2.0 * (radius + 3.0 * h) / h));
    return g;
}

namespace {

void measure_support(PlanarGrid& g) {
    g.sup_abs = 0;
    double rs = std::numeric_limits<double>::infinity(), re = 0;
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        double a = std::abs(g.values[k]);
        g.sup_abs = std::max(g.sup_abs, a);
        if (a > 0) {
            double r = std::abs(g.geo.node(k));
            if (r > 1) {
                rs = std::min(rs, r);
                re = std::max(re, r);
            }
        }
    }
    if (re > 0) {
        g.r_s = rs;
        g.r_e = re;
    }
}

} // namespace

PlanarGrid sample_grid(const Coefficient& mu, const GridGeometry& geo) {
    PlanarGrid g;
    g.geo = geo;
    g.values.resize(geo.size());
    for (std::size_t k = 0; k < geo.size(); ++k) g.values[k] = mu(geo.node(k));
    measure_support(g);
    double ei = mu.exterior_inner();
    if (std::isfinite(ei) && geo.h > (ei - 1.0) / 8.0)
        throw DomainError("grid spacing exceeds (R_s - 1)/8 for this support");
    double io = mu.interior_outer();
    if (io > 0 && geo.h > (1.0 - io) / 8.0) throw DomainError("grid spacing too coarse for the interior support");
    if (g.r_e > 0) {
        for (auto [a, b] : mu.annuli)
            if (a > 1) {
                g.r_s = std::min(g.r_s, a);
                g.r_e = std::max(g.r_e, b);
            }
    }
    return g;
}

PlanarGrid sample_grid(const Coefficient& mu, double h, double cover_radius) {
    double R = std::max(cover_radius, std::max(mu.outer(), 1.0));
    return sample_grid(mu, GridGeometry::covering(h, R));
}

PlanarGrid grid_from_values(const GridGeometry& geo, std::vector<cplx> values) {
    if (values.size() != geo.size()) throw SizeError("grid value count does not match geometry");
    PlanarGrid g;
    g.geo = geo;
    g.values = std::move(values);
    measure_support(g);
    return g;
}

BeltramiField polar_field(const Coefficient& mu, std::size_t n_angle, int levels) {
    std::vector<double> radii;
    for (int j = levels; j >= 1; --j) radii.push_back(1.0 + std::ldexp(1.0, -j));
    for (auto [a, b] : mu.annuli) {
        if (a < 1) continue;
        for (int k = 0; k <= 64; ++k) radii.push_back(a + (b - a) * k / 64.0);
    }
    double top = std::max(2.0, 1.25 * mu.outer());
    for (int k = 0; k <= 8; ++k) radii.push_back(1.5 + (top - 1.5) * k / 8.0);
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end(), [](double x, double y) { return std::abs(x - y) < 1e-12; }),
                radii.end());
    return sample_disk_field(radii, n_angle, [&](cplx z) { return mu(z); });
}

} // namespace zq
