#include "zq/spaces.hpp"

#include "zq/error.hpp"
#include "zq/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace zq {

std::string kind_name(SeminormKind k) {
    switch (k) {
    case SeminormKind::holder: return "holder";
    case SeminormKind::lipschitz: return "lipschitz";
    case SeminormKind::zygmund: return "zygmund";
    case SeminormKind::besov: return "besov";
    case SeminormKind::bz: return "bz";
    case SeminormKind::az: return "az";
    case SeminormKind::beltrami_weighted: return "beltrami_weighted";
    }
    return "?";
}

namespace {

// Max over shifts m in [1, n/2] of q(m); shifts split across workers.
template <class F>
double max_over_shifts(std::size_t n, F&& q) {
    std::size_t half = n / 2;
    std::vector<double> best(half + 1, 0.0);
    parallel_for(half, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) best[i + 1] = q(i + 1);
    });
    return *std::max_element(best.begin(), best.end());
}

} // namespace

SeminormValue holder_seminorm(const PeriodicFunction& f, double alpha) {
    if (!(alpha > 0 && alpha <= 1)) throw DomainError("holder exponent must lie in (0,1]");
    const std::size_t n = f.size();
    const double h = kTwoPi / double(n);
    const auto& v = f.values;
    double val = max_over_shifts(n, [&](std::size_t m) {
        double mx = 0;
        for (std::size_t j = 0; j < n; ++j) mx = std::max(mx, std::abs(v[(j + m) & (n - 1)] - v[j]));
        return mx / std::pow(double(m) * h, alpha);
    });
    SeminormValue s;
    s.value = val;
    s.grid_n = n;
    s.kind = alpha == 1.0 ? SeminormKind::lipschitz : SeminormKind::holder;
    s.param = alpha;
    return s;
}

double holder_seminorm_points(const std::vector<double>& x, const std::vector<cplx>& v, double alpha) {
    if (!(alpha > 0 && alpha <= 1)) throw DomainError("holder exponent must lie in (0,1]");
    const std::size_t n = x.size();
    std::vector<double> best(n, 0.0);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            double mx = 0;
            for (std::size_t j = i + 1; j < n; ++j) {
                double d = std::fmod(std::abs(x[i] - x[j]), kTwoPi);
                d = std::min(d, kTwoPi - d);
                if (d <= 0) continue;
                mx = std::max(mx, std::abs(v[i] - v[j]) / std::pow(d, alpha));
            }
            best[i] = mx;
        }
    });
    return n ? *std::max_element(best.begin(), best.end()) : 0.0;
}

SeminormValue zygmund_seminorm(const PeriodicFunction& f) {
    const std::size_t n = f.size();
    const double h = kTwoPi / double(n);
    const auto& v = f.values;
    double val = max_over_shifts(n, [&](std::size_t m) {
        double mx = 0;
        for (std::size_t j = 0; j < n; ++j)
            mx = std::max(mx, std::abs(v[(j + m) & (n - 1)] + v[(j + n - m) & (n - 1)] - 2.0 * v[j]));
        return mx / (2.0 * double(m) * h);
    });
    SeminormValue s;
    s.value = val;
    s.grid_n = n;
    s.kind = SeminormKind::zygmund;
    s.param = 1;
    return s;
}

double zygmund_seminorm_points(const std::vector<double>&, const std::vector<double>& t,
                               const std::vector<cplx>& center, const std::vector<cplx>& plus,
                               const std::vector<cplx>& minus) {
    double mx = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] > 0) mx = std::max(mx, std::abs(plus[i] + minus[i] - 2.0 * center[i]) / (2.0 * t[i]));
    return mx;
}

SeminormValue besov_seminorm(const PeriodicFunction& f, double s) {
    if (!(s > 0 && s < 2)) throw DomainError("besov smoothness must lie in (0,2)");
    const int order = int(std::floor(s)) + 1;
    const std::size_t n = f.size();
    const double h = kTwoPi / double(n);
    const auto& v = f.values;
    double val = max_over_shifts(n, [&](std::size_t m) {
        double mx = 0;
        for (std::size_t j = 0; j < n; ++j) {
            cplx d = order == 1 ? v[(j + m) & (n - 1)] - v[j]
                                : v[(j + 2 * m) & (n - 1)] - 2.0 * v[(j + m) & (n - 1)] + v[j];
            mx = std::max(mx, std::abs(d));
        }
        return mx / std::pow(double(m) * h, s);
    });
    SeminormValue r;
    r.value = val;
    r.grid_n = n;
    r.kind = SeminormKind::besov;
    r.param = s;
    return r;
}

namespace {

// sup over the radii ladder of (1-r^2) max_theta |sum b_j r^j e^{ij theta}|.
SeminormValue weighted_series_sup(const std::vector<cplx>& b, int fixed_levels, SeminormKind kind) {
    SeminormValue out;
    out.kind = kind;
    std::size_t len = std::max<std::size_t>(b.size(), 1);
    std::size_t na = 64;
    while (na < 4 * len) na *= 2;
    out.grid_n = na;
    double l1 = 0;
    for (auto z : b) l1 += std::abs(z);

    auto level_max = [&](double r) {
        std::vector<cplx> a(na, 0.0);
        double rk = 1;
        for (std::size_t j = 0; j < b.size(); ++j) {
            a[j % na] += b[j] * rk;
            rk *= r;
        }
        fft(a, +1);
        double mx = 0;
        for (auto z : a) mx = std::max(mx, std::abs(z));
        return mx;
    };

    double sup = b.empty() ? 0.0 : std::abs(b[0]);
    out.radii.push_back(0.0);
    const int cap = 52;
    for (int j = 1;; ++j) {
        double rj = 0;
        for (int q = 4 * j - 3; q <= 4 * j; ++q) {
            rj = 1.0 - std::pow(2.0, -double(q) / 4.0);
            out.radii.push_back(rj);
            sup = std::max(sup, (1.0 - rj * rj) * level_max(rj));
        }
        if (fixed_levels > 0) {
            if (j >= fixed_levels) break;
            continue;
        }
        double tail = (1.0 - rj * rj) * l1;
        if (tail <= 1e-8 * sup || l1 == 0) break;
        if (j >= cap)
            throw TruncationError("series tail bound not reached within 52 dyadic radii");
    }
    out.value = sup;
    return out;
}

std::vector<cplx> interior_series(const FourierCoefficients& c) {
    std::vector<cplx> a;
    for (int m = 0; m <= c.highest(); ++m) a.push_back(c.at(m));
    return a;
}

} // namespace

SeminormValue bz_norm_series(const std::vector<cplx>& a, int fixed_levels) {
    std::vector<cplx> b;
    for (std::size_t k = 2; k < a.size(); ++k) b.push_back(double(k) * double(k - 1) * a[k]);
    SeminormValue s = weighted_series_sup(b, fixed_levels, SeminormKind::bz);
    s.value += a.size() > 1 ? std::abs(a[1]) : 0.0;
    return s;
}

SeminormValue az_norm_series(const std::vector<cplx>& a, int fixed_levels) {
    return weighted_series_sup(a, fixed_levels, SeminormKind::az);
}

SeminormValue bz_norm(const FourierCoefficients& c, int fixed_levels) {
    return bz_norm_series(interior_series(c), fixed_levels);
}

SeminormValue az_norm(const FourierCoefficients& c, int fixed_levels) {
    return az_norm_series(interior_series(c), fixed_levels);
}

BeltramiField::BeltramiField(FieldGeometry g, std::vector<double> lv, std::size_t m, std::vector<cplx> v,
                             double rt)
    : geometry(g), levels(std::move(lv)), n_angle(m), values(std::move(v)), ratio(rt) {
    if (values.size() != levels.size() * n_angle) throw SizeError("field value count does not match grid");
    for (std::size_t k = 1; k < levels.size(); ++k) {
        bool ok = g == FieldGeometry::disk_exterior ? levels[k] > levels[k - 1]
                                                    : std::abs(levels[k]) < std::abs(levels[k - 1]);
        if (!ok) throw DomainError("field levels are not strictly monotone");
    }
    for (double l : levels) {
        if (g == FieldGeometry::disk_exterior && !(l > 1)) throw DomainError("disk field radius must exceed 1");
        if (g == FieldGeometry::halfplane_periodic && !(l < 0)) throw DomainError("half-plane depth must be negative");
    }
    sup_abs = 0;
    for (auto z : values) sup_abs = std::max(sup_abs, std::abs(z));
    if (!(sup_abs < 1)) throw DomainError("Beltrami field has sup modulus >= 1");
}

cplx BeltramiField::node(std::size_t level, std::size_t j) const {
    double t = kTwoPi * double(j) / double(n_angle);
    if (geometry == FieldGeometry::disk_exterior) return std::polar(levels[level], t);
    return {t, levels[level]};
}

BeltramiField sample_disk_field(const std::vector<double>& radii, std::size_t m,
                                const std::function<cplx(cplx)>& mu) {
    std::vector<cplx> v(radii.size() * m);
    for (std::size_t k = 0; k < radii.size(); ++k)
        for (std::size_t j = 0; j < m; ++j) v[k * m + j] = mu(std::polar(radii[k], kTwoPi * double(j) / double(m)));
    return BeltramiField(FieldGeometry::disk_exterior, radii, m, std::move(v));
}

SeminormValue beltrami_weighted_norm(const BeltramiField& mu, double alpha) {
    if (!(alpha > 0 && alpha < 2)) throw DomainError("weight exponent must lie in (0,2)");
    if (alpha > 1 && mu.geometry != FieldGeometry::disk_exterior)
        throw DomainError("weight exponent above 1 only for the disk exterior");
    SeminormValue s;
    s.kind = SeminormKind::beltrami_weighted;
    s.param = alpha;
    s.grid_n = mu.n_angle;
    for (std::size_t k = 0; k < mu.levels.size(); ++k) {
        double lv = mu.levels[k];
        double w = mu.geometry == FieldGeometry::disk_exterior ? std::max(std::pow(lv - 1.0, -alpha), 1.0)
                                                               : std::pow(std::abs(lv), -alpha);
        double mx = 0;
        for (std::size_t j = 0; j < mu.n_angle; ++j) mx = std::max(mx, std::abs(mu.at(k, j)));
        s.profile.emplace_back(lv, w * mx);
        s.value = std::max(s.value, w * mx);
    }
    return s;
}

CzSplit decompose_cz(const PeriodicFunction& f) {
    CzSplit r;
    r.interior = szego_interior(f);
    r.exterior = szego_exterior(f);
    r.k_split = kSplitConstant;
    r.bz_interior = bz_norm(r.interior).value;
    std::vector<cplx> w(std::size_t(r.exterior.highest()) + 2, 0.0);
    for (int m = r.exterior.lowest(); m < 0; ++m) w[std::size_t(-m)] = r.exterior.at(m);
    r.bz_exterior = bz_norm_series(w).value;
    PeriodicFunction re = PeriodicFunction::from_real(f.real());
    PeriodicFunction im = PeriodicFunction::from_real(f.imag());
    r.cz_norm = zygmund_seminorm(re).value + zygmund_seminorm(im).value + f.max_abs();
    return r;
}

} // namespace zq
