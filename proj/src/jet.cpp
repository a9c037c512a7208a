#include "zq/beltrami.hpp"

#include "zq/error.hpp"
#include "zq/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zq {

namespace series {

std::vector<cplx> derivative(const std::vector<cplx>& a) {
    if (a.size() <= 1) return {};
    std::vector<cplx> d(a.size() - 1);
    for (std::size_t k = 1; k < a.size(); ++k) d[k - 1] = double(k) * a[k];
    return d;
}

std::vector<cplx> multiply(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    const std::size_t L = std::min(a.size(), b.size());
    std::vector<cplx> c(L, 0.0);
    for (std::size_t k = 0; k < L; ++k)
        for (std::size_t j = 0; j <= k; ++j) c[k] += a[j] * b[k - j];
    return c;
}

std::vector<cplx> divide(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    const std::size_t L = std::min(a.size(), b.size());
    if (L == 0) return {};
    if (b[0] == 0.0) throw DomainError("series division by a series vanishing at 0");
    std::vector<cplx> q(L);
    for (std::size_t k = 0; k < L; ++k) {
        cplx s = a[k];
        for (std::size_t j = 0; j < k; ++j) s -= q[j] * b[k - j];
        q[k] = s / b[0];
    }
    return q;
}

std::vector<cplx> log1(const std::vector<cplx>& b) {
    if (b.empty()) return {};
    auto r = divide(derivative(b), b);
    std::vector<cplx> l(b.size(), 0.0);
    for (std::size_t k = 1; k < b.size(); ++k) l[k] = r[k - 1] / double(k);
    return l;
}

} // namespace series

ConformalJet ConformalJet::from_coefficients(std::vector<cplx> a, double rho) {
    if (a.size() < 4) throw SizeError("jet needs at least 4 coefficients");
    ConformalJet j;
    j.a = std::move(a);
    j.rho = rho;
    j.d1 = series::derivative(j.a);
    j.d2 = series::derivative(j.d1);
    j.d3 = series::derivative(j.d2);
    if (j.d1[0] == 0.0) throw DegeneracyError("F'(0) = 0");
    j.N = series::divide(j.d2, j.d1);
    auto dN = series::derivative(j.N);
    auto N2 = series::multiply(j.N, j.N);
    j.S.resize(dN.size());
    for (std::size_t k = 0; k < dN.size(); ++k) j.S[k] = dN[k] - 0.5 * N2[k];
    if (rho > 0) {
        double mx = 0;
        for (std::size_t k = 0; k < j.a.size(); ++k) mx = std::max(mx, std::abs(j.a[k]) * std::pow(rho, double(k)));
        double last = std::abs(j.a.back()) * std::pow(rho, double(j.a.size() - 1));
        j.tail = mx > 0 ? last / mx : 0;
    }
    return j;
}

cplx ConformalJet::eval(const std::vector<cplx>& s, cplx z) {
    cplx v = 0;
    for (std::size_t k = s.size(); k-- > 0;) v = v * z + s[k];
    return v;
}

std::vector<cplx> ConformalJet::schwarzian_direct() const {
    auto r3 = series::divide(d3, d1);
    auto r2 = series::divide(d2, d1);
    auto q = series::multiply(r2, r2);
    std::vector<cplx> s(std::min(r3.size(), q.size()));
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = r3[k] - 1.5 * q[k];
    return s;
}

std::vector<cplx> ConformalJet::log_deriv() const { return series::log1(d1); }

ConformalJet conformal_jet(const QuasiconformalMap& F, double rho, std::size_t samples) {
    if (samples < 8 || samples % 2) throw SizeError("jet sample count must be even and at least 8");
    double near = std::numeric_limits<double>::infinity();
    for (auto w : F.src_w) near = std::min(near, std::abs(w));
    if (near <= 1.0) throw DomainError("conformal jet needs the coefficient to vanish on the closed disk");
    if (rho <= 0) rho = std::isfinite(near) ? 0.5 * (1.0 + near) : 1.0;
    if (rho >= near) throw DomainError("extraction radius reaches the support");

    std::vector<cplx> z(samples);
    for (std::size_t j = 0; j < samples; ++j) z[j] = std::polar(rho, kTwoPi * double(j) / double(samples));
    // disk_conformal normalization from the principal map
    cplx p0 = F.principal(0.0), d0 = F.principal_deriv(0.0);
    auto v = F.principal(z);
    for (auto& x : v) x = (x - p0) / d0;
    fft(v, -1);
    const std::size_t M = samples / 2;
    std::vector<cplx> a(M);
    for (std::size_t k = 0; k < M; ++k) a[k] = v[k] / (double(samples) * std::pow(rho, double(k)));
    a[0] = 0.0;
    a[1] = 1.0;
    double mx = 0;
    for (std::size_t k = 0; k < M; ++k) mx = std::max(mx, std::abs(a[k]) * std::pow(rho, double(k)));
    double last = std::abs(a[M - 1]) * std::pow(rho, double(M - 1)) / mx;
    // coefficients at rounding level carry no information and blow up under differentiation
    for (std::size_t k = 2; k < M; ++k)
        if (std::abs(a[k]) * std::pow(rho, double(k)) <= 1e-15 * mx) a[k] = 0.0;
    auto jet = ConformalJet::from_coefficients(std::move(a), rho);
    jet.tail = last;
    if (jet.tail > 1e-10)
        throw ExtractionError("Taylor tail " + std::to_string(jet.tail) + " above 1e-10 at radius " +
                              std::to_string(rho));
    return jet;
}

PeriodicFunction jet_boundary_log(const ConformalJet& jet, std::size_t n) {
    // log(zeta F'/F) = log(F'/F'(0)) - log((F/z)/(F/z)(0)), holomorphic in the disk
    std::vector<cplx> q(jet.a.begin() + 1, jet.a.end());
    auto l1 = series::log1(jet.d1);
    auto l2 = series::log1(q);
    const std::size_t L = std::min(l1.size(), l2.size());
    std::vector<cplx> s(L);
    cplx base = std::log(jet.d1[0] / q[0]);
    for (std::size_t k = 0; k < L; ++k) s[k] = l1[k] - l2[k];
    s[0] += base;
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = ConformalJet::eval(s, std::polar(1.0, kTwoPi * double(j) / double(n)));
    return PeriodicFunction(std::move(out));
}

} // namespace zq
