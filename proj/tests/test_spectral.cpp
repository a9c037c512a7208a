#include "doctest.h"
#include "zq/diffeo.hpp"
#include "zq/error.hpp"
#include "zq/spectral.hpp"

#include <cmath>

using namespace zq;

namespace {

// Direct O(n^2) transform, independent of the FFT path.
cplx naive_coeff(const PeriodicFunction& f, int m) {
    cplx s = 0;
    const double n = double(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) s += f.values[j] * std::polar(1.0, -m * f.theta(j));
    return s / n;
}

// Principal value of (1/(pi i)) pv int f(t) / (e^{it} - e^{ix}) d(e^{it}), written
// with the cotangent kernel: Hf(x) = mean f - (i/2pi) pv int f(t) cot((t-x)/2) dt.
// Sampling only nodes of opposite parity to the target makes the rule exact
// for band-limited data.
std::vector<cplx> pv_hilbert(const PeriodicFunction& f) {
    const std::size_t n = f.size();
    cplx mean = 0;
    for (auto v : f.values) mean += v;
    mean /= double(n);
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx s = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (((j + n - k) % 2) == 0) continue;
            s += f.values[j] / std::tan((f.theta(j) - f.theta(k)) / 2);
        }
        out[k] = mean - cplx(0, 2.0 / double(n)) * s;
    }
    return out;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("dft of constants and cosine") {
    auto one = PeriodicFunction::sample(16, [](double) { return 1.0; });
    auto c = dft(one);
    CHECK(c.at(0) == cplx(1.0));
    for (int m = c.lowest(); m <= c.highest(); ++m)
        if (m) CHECK(std::abs(c.at(m)) < 1e-15);
    auto cs = dft(PeriodicFunction::sample(64, [](double t) { return std::cos(t); }));
    CHECK(std::abs(cs.at(1) - 0.5) < 1e-15);
    CHECK(std::abs(cs.at(-1) - 0.5) < 1e-15);
}

TEST_CASE("dft agrees with direct summation and roundtrips") {
    auto f = random_band_limited(128, 40, 7);
    auto c = dft(f);
    for (int m = c.lowest(); m <= c.highest(); ++m) CHECK(std::abs(c.at(m) - naive_coeff(f, m)) < 1e-13);
    CHECK(max_diff(idft(c).values, f.values) < 1e-12 * f.max_abs());
}

TEST_CASE("size errors") {
    CHECK_THROWS_AS(PeriodicFunction(std::vector<cplx>(24)), SizeError);
    CHECK_THROWS_AS(PeriodicFunction(std::vector<cplx>(8)), SizeError);
}

TEST_CASE("hilbert multiplier values") {
    const std::size_t n = 64;
    auto e1 = PeriodicFunction::sample_complex(n, [](double t) { return std::polar(1.0, t); });
    auto em = PeriodicFunction::sample_complex(n, [](double t) { return std::polar(1.0, -t); });
    CHECK(max_diff(hilbert_transform(e1).values, e1.values) < 1e-14);
    std::vector<cplx> neg(n);
    for (std::size_t j = 0; j < n; ++j) neg[j] = -em.values[j];
    CHECK(max_diff(hilbert_transform(em).values, neg) < 1e-14);
    // quadrature oracle agrees on both modes
    CHECK(max_diff(pv_hilbert(e1), e1.values) < 1e-12);
    CHECK(max_diff(pv_hilbert(em), neg) < 1e-12);
    auto s = PeriodicFunction::sample(n, [](double t) { return std::sin(t); });
    auto hs = hilbert_transform(s);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(hs.values[j] - cplx(0, -std::cos(s.theta(j)))) < 1e-14);
    auto one = PeriodicFunction::sample(n, [](double) { return 1.0; });
    CHECK(max_diff(hilbert_transform(one).values, one.values) < 1e-15);
}

TEST_CASE("involution, projection identity, complementarity") {
    for (std::size_t n : {64u, 256u}) {
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            auto f = random_band_limited(n, n / 2 - 1, seed);
            double s = f.max_abs();
            CHECK(max_diff(hilbert_transform(hilbert_transform(f)).values, f.values) <= 1e-11 * s);
            auto hf = hilbert_transform(f);
            auto tr = idft(szego_interior(f));
            std::vector<cplx> half(n);
            for (std::size_t j = 0; j < n; ++j) half[j] = 0.5 * (f.values[j] + hf.values[j]);
            CHECK(max_diff(tr.values, half) <= 1e-11 * s);
            auto ci = szego_interior(f), ce = szego_exterior(f), c = dft(f);
            for (std::size_t k = 0; k < n; ++k) CHECK(ci.coeffs[k] + ce.coeffs[k] == c.coeffs[k]);
        }
    }
}

TEST_CASE("multiplier agrees with principal-value quadrature on band-limited input") {
    const std::size_t n = 128;
    for (std::uint64_t seed = 11; seed < 15; ++seed) {
        auto f = random_band_limited(n, n / 4, seed);
        CHECK(max_diff(hilbert_transform(f).values, pv_hilbert(f)) <= 1e-6 * std::max(1.0, f.max_abs()));
    }
}

TEST_CASE("szego pieces of cosine and constants") {
    auto cs = PeriodicFunction::sample(32, [](double t) { return std::cos(t); });
    auto i = szego_interior(cs), e = szego_exterior(cs);
    CHECK(std::abs(i.at(1) - 0.5) < 1e-15);
    CHECK(std::abs(i.at(-1)) == 0.0);
    CHECK(std::abs(e.at(-1) - 0.5) < 1e-15);
    auto k = PeriodicFunction::sample(32, [](double) { return 3.0; });
    CHECK(std::abs(szego_interior(k).at(0) - 3.0) < 1e-15);
    for (auto z : szego_exterior(k).coeffs) CHECK(z == cplx(0.0));
}

TEST_CASE("holomorphic extension") {
    FourierCoefficients c(32);
    c.at(1) = 1.0;
    auto v = extend_holomorphic(c, Side::interior, 0.5);
    for (std::size_t j = 0; j < 32; ++j) CHECK(std::abs(v.values[j] - 0.5 * std::polar(1.0, v.theta(j))) < 1e-15);
    FourierCoefficients d(32);
    d.at(-2) = 1.0;
    auto w = extend_holomorphic(d, Side::exterior, 2.0);
    for (std::size_t j = 0; j < 32; ++j) CHECK(std::abs(w.values[j] - 0.25 * std::polar(1.0, -2 * w.theta(j))) < 1e-15);
    CHECK_THROWS_AS(extend_holomorphic(d, Side::interior, 0.5), DomainError);
    CHECK_THROWS_AS(extend_holomorphic(c, Side::interior, 1.5), DomainError);
    auto f = random_band_limited(64, 20, 3);
    auto ci = szego_interior(f);
    CHECK(max_diff(extend_holomorphic(ci, Side::interior, 1.0).values, idft(ci).values) < 1e-14);
}

TEST_CASE("trigonometric interpolation reproduces nodes and band-limited functions") {
    auto f = random_band_limited(64, 20, 5);
    auto c = dft(f);
    std::vector<double> xs;
    for (std::size_t j = 0; j < 64; ++j) xs.push_back(f.theta(j));
    CHECK(max_diff(trig_eval(c, xs), f.values) < 1e-13);
    auto g = [](double t) { return std::cos(3 * t) + 0.25 * std::sin(7 * t); };
    auto cg = dft(PeriodicFunction::sample(32, g));
    CHECK(std::abs(trig_eval(cg, 0.377) - g(0.377)) < 1e-14);
    auto dg = trig_eval_derivative(cg, {0.377});
    CHECK(std::abs(dg[0] - (-3 * std::sin(3 * 0.377) + 1.75 * std::cos(7 * 0.377))) < 1e-13);
}
