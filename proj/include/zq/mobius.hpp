#pragma once

#include <complex>

namespace zq {

// z -> (a z + b) / (c z + d)
struct Mobius {
    std::complex<double> a{1}, b{0}, c{0}, d{1};

    std::complex<double> operator()(std::complex<double> z) const { return (a * z + b) / (c * z + d); }
    std::complex<double> derivative(std::complex<double> z) const {
        auto den = c * z + d;
        return (a * d - b * c) / (den * den);
    }
    Mobius operator*(const Mobius& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mobius inverse() const { return {d, -b, -c, a}; }

    // sends p, q, r to 0, 1, infinity
    static Mobius to_zero_one_inf(std::complex<double> p, std::complex<double> q, std::complex<double> r) {
        return {q - r, -p * (q - r), q - p, -r * (q - p)};
    }
    // sends p, q, r to u, v, w
    static Mobius three_point(std::complex<double> p, std::complex<double> q, std::complex<double> r,
                              std::complex<double> u, std::complex<double> v, std::complex<double> w) {
        return to_zero_one_inf(u, v, w).inverse() * to_zero_one_inf(p, q, r);
    }
};

} // namespace zq
