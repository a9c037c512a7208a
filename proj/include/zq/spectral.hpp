#pragma once

#include "zq/fft.hpp"

#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace zq {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(std::size_t n);

// Samples at theta_j = 2*pi*j/n, n a power of two >= 16.
struct PeriodicFunction {
    std::vector<cplx> values;
    bool is_real = false;

    PeriodicFunction() = default;
    explicit PeriodicFunction(std::vector<cplx> v);
    static PeriodicFunction from_real(const std::vector<double>& v);
    static PeriodicFunction sample(std::size_t n, const std::function<double(double)>& f);
    static PeriodicFunction sample_complex(std::size_t n, const std::function<cplx(double)>& f);

    std::size_t size() const { return values.size(); }
    double theta(std::size_t j) const { return kTwoPi * double(j) / double(values.size()); }
    std::vector<double> real() const;
    std::vector<double> imag() const;
    double max_abs() const;
};

// Modes m = -n/2 .. n/2-1, stored at index m + n/2.
struct FourierCoefficients {
    std::vector<cplx> coeffs;

    FourierCoefficients() = default;
    explicit FourierCoefficients(std::size_t n) : coeffs(n) {}
    std::size_t size() const { return coeffs.size(); }
    int lowest() const { return -int(coeffs.size() / 2); }
    int highest() const { return int(coeffs.size() / 2) - 1; }
    cplx at(int m) const { return coeffs[std::size_t(m - lowest())]; }
    cplx& at(int m) { return coeffs[std::size_t(m - lowest())]; }
};

enum class Side { interior, exterior };

// c_m = mean of f e^{-im theta}; so f = 1 gives c_0 = 1.
FourierCoefficients dft(const PeriodicFunction& f);
PeriodicFunction idft(const FourierCoefficients& c);

// Multiplier +1 on m >= 0, -1 on m < 0.
PeriodicFunction hilbert_transform(const PeriodicFunction& f);
FourierCoefficients szego_interior(const PeriodicFunction& f);
FourierCoefficients szego_exterior(const PeriodicFunction& f);

// Sum c_m r^{|m|} e^{im theta} on the circle of radius r (r <= 1 interior,
// r >= 1 exterior; for the exterior the factor is r^{-|m|}).
PeriodicFunction extend_holomorphic(const FourierCoefficients& c, Side side, double radius);

// Derivative by i*m, Nyquist mode dropped.
PeriodicFunction spectral_derivative(const PeriodicFunction& f);

// Trigonometric interpolant at arbitrary points. The Nyquist mode enters as
// cos(n x / 2), so real samples give a real interpolant.
cplx trig_eval(const FourierCoefficients& c, double x);
std::vector<cplx> trig_eval(const FourierCoefficients& c, const std::vector<double>& xs);
// Same for the derivative of the interpolant.
std::vector<cplx> trig_eval_derivative(const FourierCoefficients& c, const std::vector<double>& xs);

// Band-limited resampling to m points by zero padding or truncation.
PeriodicFunction resample(const PeriodicFunction& f, std::size_t m);

} // namespace zq
