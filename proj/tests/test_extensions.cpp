#include "doctest.h"
#include "zq/error.hpp"
#include "zq/extensions.hpp"
#include "zq/spaces.hpp"

#include <cmath>

using namespace zq;

namespace {

// Gauss-Legendre nodes/weights on [0,1] by Newton on P_m.
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
    x.resize(m);
    w.resize(m);
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (m + 0.5)), dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = z;
            for (int k = 2; k <= m; ++k) {
                double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (z * p1 - p0) / (z * z - 1);
            double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = 0.5 * (1 - z);
        w[i] = 1.0 / ((1 - z * z) * dp * dp);
    }
}

cplx ba_quadrature(const std::function<double(double)>& f, double x, double y) {
    std::vector<double> t, w;
    gauss_legendre(64, t, w);
    double a = 0, b = 0, s = std::abs(y);
    for (int i = 0; i < 64; ++i) {
        a += w[i] * f(x + t[i] * s);
        b += w[i] * f(x - t[i] * s);
    }
    return {0.5 * (a + b), -(a - b)};
}

double zseries(double t, int lo, int hi) {
    double s = 0;
    for (int k = lo; k <= hi; ++k) s += std::pow(2.0, -k) * std::cos(std::ldexp(1.0, k) * t);
    return s;
}

} // namespace

TEST_CASE("identity and constants") {
    auto d = dyadic_depths(256, 6);
    auto F = ba_extend(CircleDiffeo::identity(256), d);
    for (std::size_t k = 0; k < d.size(); ++k)
        for (std::size_t j = 0; j < 256; ++j) CHECK(std::abs(F.at(k, j) - cplx(F.x(j), d[k])) < 1e-13);
    auto mu = dilatation_field(F);
    for (auto v : mu.values) CHECK(std::abs(v) <= 1e-10);
    for (auto v : dbar_field(F).values) CHECK(std::abs(v) <= 1e-10);
    auto C = ba_extend(PeriodicFunction::sample(64, [](double) { return 2.5; }), dyadic_depths(64, 3));
    for (auto v : C.values) CHECK(std::abs(v - 2.5) < 1e-14);
}

TEST_CASE("cosine extension matches Gauss-Legendre quadrature") {
    auto f = [](double t) { return std::cos(t); };
    auto F = ba_extend(PeriodicFunction::sample(128, f), {-0.5});
    CHECK(std::abs(F.at(0, 0) - ba_quadrature(f, 0, -0.5)) < 1e-10);
    CHECK(std::abs(F.at(0, 37) - ba_quadrature(f, F.x(37), -0.5)) < 1e-10);
    auto h = from_log_derivative(PeriodicFunction::sample(128, [](double t) { return std::log(1 + 0.5 * std::cos(t)); }));
    auto H = ba_extend(h, {-0.3});
    auto lift = [](double t) { return t + 0.5 * std::sin(t); };
    CHECK(std::abs(H.at(0, 11) - ba_quadrature(lift, H.x(11), -0.3)) < 1e-10);
}

TEST_CASE("dbar by differentiated integrals agrees with finite differences") {
    auto f = [](double t) { return std::cos(t); };
    const std::size_t n = 256;
    auto src = PeriodicFunction::sample(n, f);
    auto D = dbar_field(ba_extend(src, {-0.4}));
    const double e = 1e-5;
    double worst = 0, sup = 0;
    for (std::size_t j = 0; j < n; j += 5) {
        double x = D.x(j);
        cplx px = (ba_quadrature(f, x + e, -0.4) - ba_quadrature(f, x - e, -0.4)) / (2 * e);
        cplx py = (ba_quadrature(f, x, -0.4 + e) - ba_quadrature(f, x, -0.4 - e)) / (2 * e);
        cplx fd = 0.5 * (px + cplx(0, 1) * py);
        worst = std::max(worst, std::abs(fd - D.at(0, j)));
        sup = std::max(sup, std::abs(D.at(0, j)));
    }
    CHECK(worst <= 0.05 * sup);
}

TEST_CASE("rotation equivariance") {
    const std::size_t n = 256;
    auto f = random_band_limited(n, 50, 8);
    const std::size_t sh = 7;
    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j) g[j] = f.values[(j + sh) % n].real();
    auto d = dyadic_depths(n, 5);
    auto A = ba_extend(f, d), B = ba_extend(PeriodicFunction::from_real(g), d);
    for (std::size_t k = 0; k < d.size(); ++k)
        for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(B.at(k, j) - A.at(k, (j + sh) % n)) < 1e-10);
}

TEST_CASE("decay profiles") {
    const std::size_t n = 1 << 12;
    auto d = dyadic_depths(n, 6, 0.5);
    auto h = from_log_derivative(PeriodicFunction::sample(n, [](double t) { return std::log(1 + 0.5 * std::cos(t)); }));
    auto mu = dilatation_field(ba_extend(h, d));
    for (auto v : mu.values) CHECK(std::abs(v) < 1);
    auto p = decay_profile(mu, 1);
    double lo = 1e300, hi = 0;
    for (auto [y, m] : p) {
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    CHECK(hi / lo <= 10);
    HalfPlaneField zero = mu;
    for (auto& v : zero.values) v = 0;
    for (auto [y, m] : decay_profile(zero, 1)) CHECK(m == 0);
    HalfPlaneField env = mu;
    for (std::size_t k = 0; k < d.size(); ++k)
        for (std::size_t j = 0; j < n; ++j) env.values[k * n + j] = std::min(std::abs(d[k]), 1.0) * std::polar(1.0, 0.1 * j);
    for (auto [y, m] : decay_profile(env, 1)) CHECK(m <= 1 + 1e-12);
}

TEST_CASE("holder-only fixture blows up") {
    const std::size_t n = 1 << 14;
    auto w = PeriodicFunction::sample(n, [](double t) {
        double s = 0;
        for (int k = 0; k <= 12; ++k) s += std::pow(2.0, -0.5 * k) * std::cos(std::ldexp(1.0, k) * t);
        return s;
    });
    auto D = dbar_field(ba_extend(w, dyadic_depths(n, 5, 0.25)));
    auto p = decay_profile(D, 0);
    for (std::size_t k = 1; k < p.size(); ++k) CHECK(p[k].second >= 1.3 * p[k - 1].second);
    auto z = PeriodicFunction::sample(n, [](double t) { return zseries(t, 1, 12); });
    auto Dz = dbar_field(ba_extend(z, dyadic_depths(n, 10, 1.0)));
    double sup = 0;
    for (auto [y, m] : decay_profile(Dz, 0)) sup = std::max(sup, m);
    CHECK(sup <= 10 * zygmund_seminorm(z).value);
}

TEST_CASE("degenerate jacobian is reported") {
    HalfPlaneField F = ba_extend(PeriodicFunction::sample(64, [](double) { return 1.0; }), {-0.5});
    CHECK_THROWS_AS(dilatation_field(F), DegeneracyError);
}
