#pragma once

#include "zq/beltrami.hpp"
#include "zq/planar.hpp"
#include "zq/spaces.hpp"

#include <functional>
#include <vector>

namespace zq {

// (1/4)^{(2-alpha)^2/(2+alpha)}
double lambda_threshold(double alpha);
// max(threshold + 0.05, 0.9)
double default_lambda(double alpha);

inline constexpr double kRecurrenceCap = 1e300;

// s_0 = 1, s_n = lambda^{n/alpha} (1 + s_{n-1})^{2/alpha}, computed in logs and
// capped at kRecurrenceCap.
struct RecurrenceTrace {
    double alpha = 1, lambda = 0.9;
    std::vector<double> s;           // s_0 .. s_{n_max}
    std::vector<double> log_s;       // exact logs, kept when s under- or overflows
    std::size_t exact_terms = 0;     // s_0 .. s_{exact_terms-1} are uncapped
    bool diverged = false;           // last term above 1e6
    std::vector<double> t(double tau) const;
    // relative residual of (1/(1+s_{n-1}))^2 s_n^alpha = lambda^n, n >= 1
    double residual(std::size_t n) const;
    bool increasing() const;         // over the uncapped prefix
};

RecurrenceTrace recurrence(double alpha, double lambda, std::size_t n_max);
// s'_1 = (4 lambda)^{1/alpha}, s'_n = lambda^{n/alpha} s'_{n-1}^{2/alpha}; index 0 unused (set to 1)
std::vector<double> comparison_sequence(double alpha, double lambda, std::size_t n_max);

// Annuli A_i = {R_i < |z| < R_{i+1}}, i = -1 .. N, stored from i = -1.
struct AnnulusDecomposition {
    double alpha = 1, lambda = 0.9;
    double ell = 0;                  // ||mu||_alpha
    double tau = 1;                  // 1 - |zeta|
    cplx zeta = 0;
    int N = 0;
    bool degenerate = false;         // ell = 0
    std::vector<double> t;           // t_0 .. t_{N+1}
    std::vector<double> radii;       // R_{-1} = 1, R_0 .. R_N, R_{N+1} = inf
    std::vector<double> k;           // k_{-1} .. k_N
};

// k_i is the larger of the field maximum over A_i and envelope(R_i, R_{i+1})
// when an envelope is supplied.
AnnulusDecomposition decompose_for_point(const BeltramiField& mu, double alpha, double lambda, cplx zeta,
                                         const std::function<double(double, double)>& envelope = {});

// 12 sum_i k_i / (R_i - |zeta|)^2
double schwarzian_sum_bound(const AnnulusDecomposition& d);

// (tau/(tau + t_n))^2 ell t_{n+1}^alpha against lambda^{n+1} ell tau^alpha for n = -1 .. N
struct TelescopingTerm {
    int n;
    double term, geometric;
};
std::vector<TelescopingTerm> telescoping_terms(const AnnulusDecomposition& d);

struct AlphaBoundPoint {
    cplx zeta;
    double s_abs = 0;       // |S_F(zeta)|
    double lhs = 0;         // (1 - |zeta|)^{2 - alpha} |S_F(zeta)|
    double rhs = 0;         // 12/(1 - lambda) ||mu||_alpha
    double lemma = 0;       // per-point sum bound for |S_F(zeta)|
};

struct AlphaBoundResult {
    double alpha = 1, lambda = 0.9, C = 120, ell = 0, h = 0;
    std::vector<AlphaBoundPoint> points;
    std::vector<cplx> excluded;  // points beyond the radius the jet certifies
    double max_ratio = 0;        // max lhs / rhs
    double max_lemma_ratio = 0;  // max |S| / lemma bound
    bool theorem_holds = true, lemma_holds = true;
};

// {0} and {0.3, 0.6, 0.9} x 8 angles
std::vector<cplx> default_zeta_grid();

AlphaBoundResult verify_alpha_bound(const Coefficient& mu, double alpha, double lambda,
                                    const std::vector<cplx>& zetas, double h = 1.0 / 32,
                                    const SolverOptions& opt = {});

} // namespace zq
