#include "zq/extensions.hpp"

#include "zq/error.hpp"

#include <cmath>
#include <string>

namespace zq {

namespace {

// Samples of g(x + s) and of int_0^1 g(x + t s) dt for band-limited g.
struct Shifted {
    std::vector<double> shift, avg;
};

Shifted shift_and_average(const FourierCoefficients& c, double s) {
    FourierCoefficients cs(c.size()), ca(c.size());
    for (int m = c.lowest(); m <= c.highest(); ++m) {
        // Nyquist mode is treated as cos(n x / 2) so the output stays real
        double k = m == c.lowest() ? 0.0 : double(m);
        cplx z = c.at(m);
        double ks = k * s;
        cplx e = std::polar(1.0, ks);
        cs.at(m) = z * e;
        ca.at(m) = std::abs(ks) > 1e-12 ? z * (e - 1.0) / cplx(0, ks) : z;
        if (m == c.lowest()) {
            double w = -double(m) * s;
            cs.at(m) = z * std::cos(w);
            ca.at(m) = std::abs(w) > 1e-12 ? z * std::sin(w) / w : z;
        }
    }
    Shifted r;
    r.shift = idft(cs).real();
    r.avg = idft(ca).real();
    return r;
}

HalfPlaneField extend(const PeriodicFunction& src, bool lift, const std::vector<double>& depths) {
    if (!src.is_real) throw DomainError("extension source must be real-valued");
    for (std::size_t k = 0; k < depths.size(); ++k) {
        if (!(depths[k] < 0)) throw DomainError("depths must be negative");
        if (k && !(std::abs(depths[k]) < std::abs(depths[k - 1])))
            throw DomainError("depths must approach the boundary monotonically");
    }
    const std::size_t n = src.size();
    HalfPlaneField F;
    F.n_x = n;
    F.depths = depths;
    F.kind = FieldKind::map;
    F.source = src;
    F.lift_source = lift;
    F.values.resize(depths.size() * n);
    FourierCoefficients c = dft(src);
    for (std::size_t k = 0; k < depths.size(); ++k) {
        double s = std::abs(depths[k]);
        Shifted p = shift_and_average(c, s), m = shift_and_average(c, -s);
        for (std::size_t j = 0; j < n; ++j) {
            double x = F.x(j);
            double a = p.avg[j], b = m.avg[j];
            if (lift) {
                a += x + 0.5 * s;
                b += x - 0.5 * s;
            }
            F.values[k * n + j] = cplx(0.5 * (a + b), -(a - b));
        }
    }
    return F;
}

} // namespace

std::vector<double> dyadic_depths(std::size_t n, std::size_t levels, double y_max) {
    std::vector<double> d;
    const double y_min = kTwoPi / double(n);
    double y = y_max;
    for (std::size_t k = 0; k < levels && y >= y_min * (1 - 1e-12); ++k, y *= 0.5) d.push_back(-y);
    return d;
}

HalfPlaneField ba_extend(const PeriodicFunction& f, const std::vector<double>& depths) {
    return extend(f, false, depths);
}

HalfPlaneField ba_extend(const CircleDiffeo& h, const std::vector<double>& depths) {
    return extend(h.lift, true, depths);
}

namespace {

// returns (dbar, d) of Phi per node
std::pair<std::vector<cplx>, std::vector<cplx>> derivatives(const HalfPlaneField& F) {
    if (F.kind != FieldKind::map) throw DomainError("derivatives need a map field");
    const std::size_t n = F.n_x;
    FourierCoefficients c = dft(F.source);
    std::vector<double> f0 = F.source.real();
    std::vector<cplx> db(F.values.size()), dd(F.values.size());
    for (std::size_t k = 0; k < F.depths.size(); ++k) {
        double s = std::abs(F.depths[k]);
        Shifted p = shift_and_average(c, s), m = shift_and_average(c, -s);
        for (std::size_t j = 0; j < n; ++j) {
            double x = F.x(j);
            double fp = p.shift[j], fm = m.shift[j], fc = f0[j], a = p.avg[j], b = m.avg[j];
            if (F.lift_source) {
                fp += x + s;
                fm += x - s;
                fc += x;
                a += x + 0.5 * s;
                b += x - 0.5 * s;
            }
            double ax = (fp - fc) / s, bx = (fc - fm) / s;
            double as = (fp - a) / s, bs = (fm - b) / s;
            cplx px(0.5 * (ax + bx), -(ax - bx));
            cplx py = -cplx(0.5 * (as + bs), -(as - bs));
            const cplx I(0, 1);
            db[k * n + j] = 0.5 * (px + I * py);
            dd[k * n + j] = 0.5 * (px - I * py);
        }
    }
    return {db, dd};
}

} // namespace

HalfPlaneField dbar_field(const HalfPlaneField& phi) {
    HalfPlaneField r = phi;
    r.kind = FieldKind::dbar;
    r.values = derivatives(phi).first;
    return r;
}

HalfPlaneField dilatation_field(const HalfPlaneField& phi) {
    auto [db, dd] = derivatives(phi);
    HalfPlaneField r = phi;
    r.kind = FieldKind::dilatation;
    for (std::size_t i = 0; i < db.size(); ++i) {
        double jac = std::norm(dd[i]) - std::norm(db[i]);
        if (!(jac > 0)) {
            std::size_t k = i / phi.n_x, j = i % phi.n_x;
            throw DegeneracyError("Jacobian not positive at node (x index " + std::to_string(j) + ", depth " +
                                  std::to_string(phi.depths[k]) + ")");
        }
        r.values[i] = db[i] / dd[i];
    }
    return r;
}

std::vector<std::pair<double, double>> decay_profile(const HalfPlaneField& field, double order) {
    std::vector<std::pair<double, double>> out;
    for (std::size_t k = 0; k < field.depths.size(); ++k) {
        double y = std::abs(field.depths[k]);
        double mx = 0;
        for (std::size_t j = 0; j < field.n_x; ++j) mx = std::max(mx, std::abs(field.at(k, j)));
        out.emplace_back(y, mx * std::pow(y, -order));
    }
    return out;
}

} // namespace zq
