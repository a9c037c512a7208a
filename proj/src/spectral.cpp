#include "zq/spectral.hpp"

#include "zq/error.hpp"
#include "zq/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zq {

bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

namespace {

void check_size(std::size_t n) {
    if (!is_power_of_two(n) || n < 16)
        throw SizeError("sample count " + std::to_string(n) + " is not a power of two >= 16");
}

bool detect_real(const std::vector<cplx>& v) {
    double mx = 0, im = 0;
    for (auto z : v) {
        mx = std::max(mx, std::abs(z));
        im = std::max(im, std::abs(z.imag()));
    }
    return im <= 1e-12 * mx;
}

} // namespace

PeriodicFunction::PeriodicFunction(std::vector<cplx> v) : values(std::move(v)) {
    check_size(values.size());
    is_real = detect_real(values);
}

PeriodicFunction PeriodicFunction::from_real(const std::vector<double>& v) {
    std::vector<cplx> c(v.begin(), v.end());
    PeriodicFunction f(std::move(c));
    f.is_real = true;
    return f;
}

PeriodicFunction PeriodicFunction::sample(std::size_t n, const std::function<double(double)>& f) {
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = f(kTwoPi * double(j) / double(n));
    return from_real(v);
}

PeriodicFunction PeriodicFunction::sample_complex(std::size_t n, const std::function<cplx(double)>& f) {
    std::vector<cplx> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = f(kTwoPi * double(j) / double(n));
    return PeriodicFunction(std::move(v));
}

std::vector<double> PeriodicFunction::real() const {
    std::vector<double> r(values.size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = values[j].real();
    return r;
}

std::vector<double> PeriodicFunction::imag() const {
    std::vector<double> r(values.size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = values[j].imag();
    return r;
}

double PeriodicFunction::max_abs() const {
    double m = 0;
    for (auto z : values) m = std::max(m, std::abs(z));
    return m;
}

FourierCoefficients dft(const PeriodicFunction& f) {
    const std::size_t n = f.size();
    check_size(n);
    std::vector<cplx> a = f.values;
    fft(a, -1);
    FourierCoefficients c(n);
    const double inv = 1.0 / double(n);
    // FFTW index k holds mode k (k < n/2) or k - n
    for (std::size_t k = 0; k < n; ++k) {
        int m = k < n / 2 ? int(k) : int(k) - int(n);
        c.at(m) = a[k] * inv;
    }
    return c;
}

PeriodicFunction idft(const FourierCoefficients& c) {
    const std::size_t n = c.size();
    check_size(n);
    std::vector<cplx> a(n);
    for (int m = c.lowest(); m <= c.highest(); ++m) a[std::size_t(m < 0 ? m + int(n) : m)] = c.at(m);
    fft(a, +1);
    return PeriodicFunction(std::move(a));
}

PeriodicFunction hilbert_transform(const PeriodicFunction& f) {
    FourierCoefficients c = dft(f);
    for (int m = c.lowest(); m < 0; ++m) c.at(m) = -c.at(m);
    return idft(c);
}

FourierCoefficients szego_interior(const PeriodicFunction& f) {
    FourierCoefficients c = dft(f);
    for (int m = c.lowest(); m < 0; ++m) c.at(m) = 0.0;
    return c;
}

FourierCoefficients szego_exterior(const PeriodicFunction& f) {
    FourierCoefficients c = dft(f);
    for (int m = 0; m <= c.highest(); ++m) c.at(m) = 0.0;
    return c;
}

PeriodicFunction extend_holomorphic(const FourierCoefficients& c, Side side, double radius) {
    if (!(radius > 0)) throw DomainError("radius must be positive");
    if (side == Side::interior && radius > 1.0) throw DomainError("interior extension needs radius <= 1");
    if (side == Side::exterior && radius < 1.0) throw DomainError("exterior extension needs radius >= 1");
    double scale = 0;
    for (auto z : c.coeffs) scale = std::max(scale, std::abs(z));
    const double tol = 1e-12 * std::max(scale, 1.0);
    FourierCoefficients e(c.size());
    for (int m = c.lowest(); m <= c.highest(); ++m) {
        bool right = side == Side::interior ? m >= 0 : m < 0;
        if (!right) {
            if (std::abs(c.at(m)) > tol)
                throw DomainError("mode " + std::to_string(m) + " lies on the wrong side for this extension");
            continue;
        }
        e.at(m) = c.at(m) * std::pow(radius, double(m));
    }
    return idft(e);
}

PeriodicFunction spectral_derivative(const PeriodicFunction& f) {
    FourierCoefficients c = dft(f);
    for (int m = c.lowest(); m <= c.highest(); ++m) c.at(m) *= cplx(0, m);
    c.at(c.lowest()) = 0.0;
    PeriodicFunction d = idft(c);
    if (f.is_real) {
        for (auto& z : d.values) z = z.real();
        d.is_real = true;
    }
    return d;
}

namespace {

// Horner in w and conj(w) for the positive and negative halves.
inline cplx eval_one(const FourierCoefficients& c, double x, bool deriv) {
    const int lo = c.lowest(), hi = c.highest();
    const cplx w(std::cos(x), std::sin(x));
    const cplx wb = std::conj(w);
    cplx pos = 0.0, neg = 0.0;
    for (int m = hi; m >= 1; --m) pos = pos * w + (deriv ? cplx(0, m) * c.at(m) : c.at(m));
    pos = pos * w + (deriv ? 0.0 : c.at(0));
    for (int m = -lo - 1; m >= 1; --m) neg = neg * wb + (deriv ? cplx(0, -m) * c.at(-m) : c.at(-m));
    neg = neg * wb;
    const double half = double(-lo);
    cplx nyq = deriv ? -half * std::sin(half * x) * c.at(lo) : std::cos(half * x) * c.at(lo);
    return pos + neg + nyq;
}

} // namespace

cplx trig_eval(const FourierCoefficients& c, double x) { return eval_one(c, x, false); }

std::vector<cplx> trig_eval(const FourierCoefficients& c, const std::vector<double>& xs) {
    std::vector<cplx> out(xs.size());
    parallel_for(xs.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) out[i] = eval_one(c, xs[i], false);
    });
    return out;
}

std::vector<cplx> trig_eval_derivative(const FourierCoefficients& c, const std::vector<double>& xs) {
    std::vector<cplx> out(xs.size());
    parallel_for(xs.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) out[i] = eval_one(c, xs[i], true);
    });
    return out;
}

PeriodicFunction resample(const PeriodicFunction& f, std::size_t m) {
    check_size(m);
    FourierCoefficients c = dft(f);
    FourierCoefficients r(m);
    const int n = int(c.size());
    if (int(m) >= n) {
        for (int k = c.lowest() + 1; k <= c.highest(); ++k) r.at(k) = c.at(k);
        if (int(m) > n) {
            r.at(c.lowest()) = 0.5 * c.at(c.lowest());
            r.at(-c.lowest()) = 0.5 * c.at(c.lowest());
        } else {
            r.at(c.lowest()) = c.at(c.lowest());
        }
    } else {
        for (int k = r.lowest() + 1; k <= r.highest(); ++k) r.at(k) = c.at(k);
        r.at(r.lowest()) = c.at(r.lowest()) + c.at(-r.lowest());
    }
    PeriodicFunction out = idft(r);
    if (f.is_real) {
        for (auto& z : out.values) z = z.real();
        out.is_real = true;
    }
    return out;
}

} // namespace zq
