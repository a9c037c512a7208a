#pragma once

#include "zq/spaces.hpp"
#include "zq/spectral.hpp"

#include <cstdint>
#include <functional>

namespace zq {

// Degree-one circle diffeomorphism stored through its lift h(x) = x + u(x).
struct CircleDiffeo {
    PeriodicFunction lift;       // u = h - x
    PeriodicFunction deriv;      // h'
    PeriodicFunction log_deriv;  // log h'
    bool normalized = false;     // fixes 0, pi/2, 3pi/2

    CircleDiffeo() = default;
    // Validates monotonicity, positivity, consistency of log_deriv and degree.
    CircleDiffeo(PeriodicFunction u, PeriodicFunction d, PeriodicFunction logd, bool norm = false);

    static CircleDiffeo identity(std::size_t n);
    static CircleDiffeo rotation(std::size_t n, double c);

    std::size_t size() const { return lift.size(); }
    double node_value(std::size_t j) const { return lift.theta(j) + lift.values[j].real(); }
    std::vector<double> node_values() const;
    bool is_identity() const;

    // Monotone cubic Hermite interpolation of the lift, any real x.
    double eval(double x) const;
    std::vector<double> eval(const std::vector<double>& xs) const;
    // Trigonometric interpolation of log h', exponentiated.
    std::vector<double> eval_deriv(const std::vector<double>& xs) const;
    std::vector<double> eval_log_deriv(const std::vector<double>& xs) const;
    // sup of h' from an 8x refined trigonometric evaluation
    double deriv_sup() const;
};

CircleDiffeo from_log_derivative(const PeriodicFunction& phi);
CircleDiffeo compose(const CircleDiffeo& h1, const CircleDiffeo& h2);  // h1 o h2
CircleDiffeo invert(const CircleDiffeo& h);
// Post-composition with the circle Moebius map sending h(0), h(pi/2),
// h(3pi/2) to 0, pi/2, 3pi/2.
CircleDiffeo normalize(const CircleDiffeo& h);

PeriodicFunction composition_operator(const CircleDiffeo& h, const PeriodicFunction& f);  // f o h
PeriodicFunction affine_translation(const CircleDiffeo& h, const PeriodicFunction& f);    // f o h + log h'

enum class SpaceKind { zygmund, holder };

struct OperatorNormEstimate {
    double estimate = 0;       // max ratio over trials
    double bound = 0;          // |h'|_inf + |h'|_{C^alpha}
    double k_disc = 0;         // estimate / bound
    std::size_t trials_used = 0;
    std::size_t skipped = 0;
};

OperatorNormEstimate estimate_operator_norm(const CircleDiffeo& h, SpaceKind space, std::size_t trials,
                                            std::uint64_t seed = 1, double alpha = 0.5);

// Random real band-limited function, deterministic in (n, seed).
PeriodicFunction random_band_limited(std::size_t n, std::size_t max_mode, std::uint64_t seed);

// Pairwise check of the two displayed endpoint chains for P_h. Seminorms of
// phi1, phi2' are taken over grid points together with the image points
// h(x_j). link_worst[k] is the max over pairs of (left side)/(right side) for
// the k-th inequality of the chain.
struct ChainReport {
    std::size_t pairs = 0;
    std::size_t violations = 0;
    std::vector<double> link_worst;
    double h_sup = 0, h_holder = 0, phi_norm = 0;
};

ChainReport endpoint_chain_low(const CircleDiffeo& h, const std::function<double(double)>& phi1, double alpha);
ChainReport endpoint_chain_high(const CircleDiffeo& h, const std::function<double(double)>& phi2,
                                const std::function<double(double)>& dphi2, double alpha);

} // namespace zq
