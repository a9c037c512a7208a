#include "zq/beltrami.hpp"

#include "zq/error.hpp"
#include "zq/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zq {

std::string normalization_name(Normalization n) {
    switch (n) {
    case Normalization::principal: return "principal";
    case Normalization::disk_conformal: return "disk_conformal";
    case Normalization::three_point: return "three_point";
    }
    return "?";
}

namespace {

// Correction weights for the punctured Beurling sum: B_punct g - B g is
// A d_zz g + Bc d_zbar zbar g at leading order, in undivided differences.
const double kCorrA = 1.0 / (2.0 * kPi);
const double kCorrB = -kLatticeSum / (2.0 * kPi);

// Convolution with a kernel sampled at lattice offsets, via zero padding.
class Convolver {
public:
    Convolver(std::size_t M, const std::function<cplx(long, long)>& kernel) : M_(M) {
        N_ = fft_good_size(2 * M - 1);
        kf_.assign(N_ * N_, 0.0);
        const long m = long(M);
        for (long p = -(m - 1); p <= m - 1; ++p)
            for (long q = -(m - 1); q <= m - 1; ++q)
                kf_[std::size_t(p + m - 1) * N_ + std::size_t(q + m - 1)] = kernel(p, q);
        fft2(kf_, N_, N_, -1);
    }

    std::vector<cplx> apply(const std::vector<cplx>& g) const {
        std::vector<cplx> a(N_ * N_, 0.0);
        for (std::size_t i = 0; i < M_; ++i)
            std::copy(g.begin() + long(i * M_), g.begin() + long((i + 1) * M_), a.begin() + long(i * N_));
        fft2(a, N_, N_, -1);
        for (std::size_t k = 0; k < a.size(); ++k) a[k] *= kf_[k];
        fft2(a, N_, N_, +1);
        const double inv = 1.0 / double(N_ * N_);
        std::vector<cplx> out(M_ * M_);
        for (std::size_t i = 0; i < M_; ++i)
            for (std::size_t j = 0; j < M_; ++j) out[i * M_ + j] = a[(i + M_ - 1) * N_ + (j + M_ - 1)] * inv;
        return out;
    }

private:
    std::size_t M_, N_;
    std::vector<cplx> kf_;
};

Convolver beurling_convolver(std::size_t M) {
    return Convolver(M, [](long p, long q) {
        if (!p && !q) return cplx(0);
        const cplx w{double(p), double(q)};
        return -1.0 / (kPi * w * w);
    });
}

Convolver cauchy_convolver(std::size_t M, double h) {
    return Convolver(M, [h](long p, long q) {
        if (!p && !q) return cplx(0);
        return cplx(h / kPi) / cplx(double(p), double(q));
    });
}

inline cplx at0(const std::vector<cplx>& g, std::size_t M, long i, long j) {
    if (i < 0 || j < 0 || i >= long(M) || j >= long(M)) return 0.0;
    return g[std::size_t(i) * M + std::size_t(j)];
}

std::vector<cplx> correction(const std::vector<cplx>& g, std::size_t M) {
    std::vector<cplx> c(g.size());
    const cplx I(0, 1);
    for (long i = 0; i < long(M); ++i)
        for (long j = 0; j < long(M); ++j) {
            cplx g0 = at0(g, M, i, j);
            cplx dxx = at0(g, M, i + 1, j) - 2.0 * g0 + at0(g, M, i - 1, j);
            cplx dyy = at0(g, M, i, j + 1) - 2.0 * g0 + at0(g, M, i, j - 1);
            cplx dxy = 0.25 * (at0(g, M, i + 1, j + 1) - at0(g, M, i - 1, j + 1) - at0(g, M, i + 1, j - 1) +
                               at0(g, M, i - 1, j - 1));
            c[std::size_t(i) * M + std::size_t(j)] =
                kCorrA * 0.25 * (dxx - dyy - 2.0 * I * dxy) + kCorrB * 0.25 * (dxx - dyy + 2.0 * I * dxy);
        }
    return c;
}

// d/dw g = (D_x - i D_y)/2 by central differences
std::vector<cplx> d_w(const std::vector<cplx>& g, std::size_t M, double h) {
    std::vector<cplx> d(g.size());
    const cplx I(0, 1);
    for (long i = 0; i < long(M); ++i)
        for (long j = 0; j < long(M); ++j) {
            cplx dx = (at0(g, M, i + 1, j) - at0(g, M, i - 1, j)) / (2 * h);
            cplx dy = (at0(g, M, i, j + 1) - at0(g, M, i, j - 1)) / (2 * h);
            d[std::size_t(i) * M + std::size_t(j)] = 0.5 * (dx - I * dy);
        }
    return d;
}

std::vector<cplx> beurling(const Convolver& kb, const std::vector<cplx>& g, std::size_t M, Quadrature q) {
    std::vector<cplx> b = kb.apply(g);
    if (q == Quadrature::corrected) {
        auto c = correction(g, M);
        for (std::size_t k = 0; k < b.size(); ++k) b[k] -= c[k];
    }
    return b;
}

std::vector<cplx> cauchy(const Convolver& kc, const std::vector<cplx>& g, const GridGeometry& geo, Quadrature q) {
    std::vector<cplx> c = kc.apply(g);
    if (q == Quadrature::corrected) {
        auto d = d_w(g, geo.M, geo.h);
        const double w = geo.h * geo.h / kPi;
        for (std::size_t k = 0; k < c.size(); ++k) c[k] -= w * d[k];
    }
    return c;
}

} // namespace

std::vector<cplx> apply_beurling(const GridGeometry& geo, const std::vector<cplx>& g, Quadrature q) {
    return beurling(beurling_convolver(geo.M), g, geo.M, q);
}

std::vector<cplx> apply_cauchy(const GridGeometry& geo, const std::vector<cplx>& g, Quadrature q) {
    return cauchy(cauchy_convolver(geo.M, geo.h), g, geo, q);
}

QuasiconformalMap solve(const PlanarGrid& mu, Normalization norm, const SolverOptions& opt) {
    const GridGeometry& geo = mu.geo;
    const std::size_t M = geo.M;
    if (mu.values.size() != geo.size()) throw SizeError("coefficient grid size mismatch");
    if (mu.sup_abs > opt.mu_cap)
        throw DomainError("sup |mu| = " + std::to_string(mu.sup_abs) + " exceeds the solver cap");

    QuasiconformalMap F;
    F.geo = geo;
    F.normalization = norm;
    F.quadrature = opt.quadrature;

    std::vector<cplx> g = mu.values;
    bool trivial = mu.sup_abs == 0;
    std::vector<cplx> Bg(g.size(), 0.0);
    if (!trivial) {
        Convolver kb = beurling_convolver(M);
        double prev = 0;
        for (int it = 1; it <= opt.max_iterations; ++it) {
            Bg = beurling(kb, g, M, opt.quadrature);
            double r = 0;
            for (std::size_t k = 0; k < g.size(); ++k) {
                cplx gn = mu.values[k] * (1.0 + Bg[k]);
                r = std::max(r, std::abs(gn - g[k]));
                g[k] = gn;
            }
            F.iterations = it;
            if (prev > 0) F.contraction = r / prev;
            F.residual = r;
            if (r <= opt.target) break;
            if (it > 20 && prev > 0 && r >= prev && r <= opt.tolerance) break;  // rounding floor
            prev = r;
        }
        if (F.residual > opt.tolerance)
            throw SolverError("fixed point did not converge: residual " + std::to_string(F.residual) +
                                  ", contraction " + std::to_string(F.contraction),
                              F.contraction);
        Bg = beurling(kb, g, M, opt.quadrature);
    }
    F.g = g;
    F.dP.resize(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        F.dP[k] = 1.0 + Bg[k];
        double jac = std::norm(F.dP[k]) - std::norm(g[k]);
        if (!(jac > 0)) throw DegeneracyError("discrete Jacobian not positive at node " + std::to_string(k));
    }
    F.P.resize(g.size());
    if (trivial) {
        for (std::size_t k = 0; k < g.size(); ++k) F.P[k] = geo.node(k);
    } else {
        auto c = cauchy(cauchy_convolver(M, geo.h), g, geo, opt.quadrature);
        for (std::size_t k = 0; k < g.size(); ++k) F.P[k] = geo.node(k) + c[k];
    }
    for (std::size_t k = 0; k < g.size(); ++k)
        if (g[k] != 0.0) {
            F.src_w.push_back(geo.node(k));
            F.src_g.push_back(g[k]);
        }

    switch (norm) {
    case Normalization::principal: break;
    case Normalization::disk_conformal: {
        cplx p0 = F.principal(0.0), d0 = F.principal_deriv(0.0);
        F.scale = 1.0 / d0;
        F.shift = -p0 / d0;
        break;
    }
    case Normalization::three_point: {
        cplx p0 = F.principal(0.0), p1 = F.principal(1.0);
        F.scale = 1.0 / (p1 - p0);
        F.shift = -p0 / (p1 - p0);
        break;
    }
    }
    return F;
}

cplx QuasiconformalMap::principal(cplx z) const {
    cplx s = 0;
    for (std::size_t k = 0; k < src_w.size(); ++k) s += src_g[k] / (z - src_w[k]);
    return z + (geo.h * geo.h / kPi) * s;
}

cplx QuasiconformalMap::principal_deriv(cplx z) const {
    cplx s = 0;
    for (std::size_t k = 0; k < src_w.size(); ++k) {
        cplx d = z - src_w[k];
        s += src_g[k] / (d * d);
    }
    return 1.0 - (geo.h * geo.h / kPi) * s;
}

std::vector<cplx> QuasiconformalMap::principal(const std::vector<cplx>& z) const {
    std::vector<cplx> out(z.size());
    parallel_for(z.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) out[i] = principal(z[i]);
    });
    return out;
}

std::vector<cplx> QuasiconformalMap::principal_deriv(const std::vector<cplx>& z) const {
    std::vector<cplx> out(z.size());
    parallel_for(z.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) out[i] = principal_deriv(z[i]);
    });
    return out;
}

std::vector<cplx> QuasiconformalMap::eval(const std::vector<cplx>& z) const {
    auto p = principal(z);
    for (auto& v : p) v = scale * v + shift;
    return p;
}

std::vector<cplx> QuasiconformalMap::eval_deriv(const std::vector<cplx>& z) const {
    auto p = principal_deriv(z);
    for (auto& v : p) v *= scale;
    return p;
}

std::vector<cplx> QuasiconformalMap::grid_values() const {
    std::vector<cplx> v(P.size());
    for (std::size_t k = 0; k < P.size(); ++k) v[k] = scale * P[k] + shift;
    return v;
}

cplx interpolate_cubic(const GridGeometry& geo, const std::vector<cplx>& v, cplx z) {
    const double o = geo.offset();
    double fx = (z.real() + o) / geo.h, fy = (z.imag() + o) / geo.h;
    long i0 = long(std::floor(fx)), j0 = long(std::floor(fy));
    if (i0 < 1 || j0 < 1 || i0 + 2 >= long(geo.M) || j0 + 2 >= long(geo.M))
        throw ExtrapolationError("interpolation point outside the grid hull");
    double tx = fx - double(i0), ty = fy - double(j0);
    auto w = [](double t, double* c) {
        c[0] = -t * (t - 1) * (t - 2) / 6;
        c[1] = (t + 1) * (t - 1) * (t - 2) / 2;
        c[2] = -(t + 1) * t * (t - 2) / 2;
        c[3] = (t + 1) * t * (t - 1) / 6;
    };
    double wx[4], wy[4];
    w(tx, wx);
    w(ty, wy);
    cplx s = 0;
    for (int a = 0; a < 4; ++a) {
        cplx row = 0;
        for (int b = 0; b < 4; ++b) row += wy[b] * v[std::size_t(i0 - 1 + a) * geo.M + std::size_t(j0 - 1 + b)];
        s += wx[a] * row;
    }
    return s;
}

} // namespace zq
