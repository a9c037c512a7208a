#pragma once

#include "zq/diffeo.hpp"
#include "zq/spectral.hpp"

#include <utility>
#include <vector>

namespace zq {

enum class FieldKind { map, dbar, dilatation };

// Samples over x_j = 2 pi j / n (no seam column) and depths y_k < 0 with
// |y_k| halving from level to level.
struct HalfPlaneField {
    std::size_t n_x = 0;
    std::vector<double> depths;
    std::vector<cplx> values;  // values[k * n_x + j]
    FieldKind kind = FieldKind::map;
    // extension source, kept so derivatives can be formed analytically
    PeriodicFunction source;   // f, or u = h - x for a lift
    bool lift_source = false;

    cplx at(std::size_t k, std::size_t j) const { return values[k * n_x + j]; }
    double x(std::size_t j) const { return kTwoPi * double(j) / double(n_x); }
};

// |y| = y_max, y_max/2, ... for `levels` levels, never below 2 pi / n.
std::vector<double> dyadic_depths(std::size_t n, std::size_t levels, double y_max = 1.0);

// Phi = (a+b)/2 - i(a-b) at y < 0 with a = int_0^1 f(x+t|y|)dt,
// b = int_0^1 f(x-t|y|)dt; the averages are applied as exact Fourier
// multipliers (e^{iks}-1)/(iks).
HalfPlaneField ba_extend(const PeriodicFunction& f, const std::vector<double>& depths);
HalfPlaneField ba_extend(const CircleDiffeo& h, const std::vector<double>& depths);

HalfPlaneField dbar_field(const HalfPlaneField& phi);
HalfPlaneField dilatation_field(const HalfPlaneField& phi);

// (|y_k|, max_j |value| |y_k|^{-order}) per level
std::vector<std::pair<double, double>> decay_profile(const HalfPlaneField& field, double order);

} // namespace zq
