#include "zq/bounds.hpp"

#include "zq/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zq {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0 && alpha < 2)) throw DomainError("alpha must lie in (0,2)");
}

void check_lambda(double lambda) {
    if (!(lambda > 0 && lambda < 1)) throw DomainError("lambda must lie in (0,1)");
}

const double kLogCap = std::log(kRecurrenceCap);

// log of lambda^{n/alpha} base^{2/alpha}, base given by its log
double log_step(double alpha, double lambda, std::size_t n, double log_base) {
    return double(n) / alpha * std::log(lambda) + 2.0 / alpha * log_base;
}

double capped_exp(double L, bool& capped) {
    if (L > kLogCap) {
        capped = true;
        return kRecurrenceCap;
    }
    return std::exp(L);
}

} // namespace

double lambda_threshold(double alpha) {
    check_alpha(alpha);
    return std::pow(0.25, (2 - alpha) * (2 - alpha) / (2 + alpha));
}

double default_lambda(double alpha) { return std::max(lambda_threshold(alpha) + 0.05, 0.9); }

RecurrenceTrace recurrence(double alpha, double lambda, std::size_t n_max) {
    check_alpha(alpha);
    check_lambda(lambda);
    RecurrenceTrace r;
    r.alpha = alpha;
    r.lambda = lambda;
    r.s.push_back(1.0);
    r.log_s.push_back(0.0);
    r.exact_terms = 1;
    bool capped = false;
    for (std::size_t n = 1; n <= n_max; ++n) {
        double L = log_step(alpha, lambda, n, std::log1p(r.s.back()));
        r.s.push_back(capped_exp(L, capped));
        r.log_s.push_back(L);
        if (!capped) r.exact_terms = n + 1;
    }
    r.diverged = r.s.back() > 1e6;
    return r;
}

std::vector<double> RecurrenceTrace::t(double tau) const {
    std::vector<double> v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) v[i] = tau * s[i];
    return v;
}

double RecurrenceTrace::residual(std::size_t n) const {
    if (n == 0 || n >= exact_terms) throw DomainError("residual only defined on uncapped terms n >= 1");
    double L = alpha * log_s[n] - 2.0 * std::log1p(s[n - 1]) - double(n) * std::log(lambda);
    return std::abs(std::expm1(L));
}

bool RecurrenceTrace::increasing() const {
    for (std::size_t n = 1; n < exact_terms; ++n)
        if (!(s[n] > s[n - 1])) return false;
    return true;
}

std::vector<double> comparison_sequence(double alpha, double lambda, std::size_t n_max) {
    check_alpha(alpha);
    check_lambda(lambda);
    std::vector<double> s(n_max + 1, 1.0);
    if (n_max == 0) return s;
    s[1] = std::pow(4 * lambda, 1.0 / alpha);
    double L = std::log(s[1]);
    bool capped = false;
    for (std::size_t n = 2; n <= n_max; ++n) {
        L = log_step(alpha, lambda, n, L);
        s[n] = capped_exp(L, capped);
    }
    return s;
}

AnnulusDecomposition decompose_for_point(const BeltramiField& mu, double alpha, double lambda, cplx zeta,
                                         const std::function<double(double, double)>& envelope) {
    check_alpha(alpha);
    check_lambda(lambda);
    if (!(lambda > lambda_threshold(alpha))) throw DomainError("lambda must exceed the recurrence threshold");
    if (!(std::abs(zeta) < 1)) throw DomainError("target point must lie in the open disk");
    if (mu.geometry != FieldGeometry::disk_exterior) throw DomainError("decomposition needs a disk-exterior field");

    AnnulusDecomposition d;
    d.alpha = alpha;
    d.lambda = lambda;
    d.zeta = zeta;
    d.tau = 1 - std::abs(zeta);
    d.ell = beltrami_weighted_norm(mu, alpha).value;
    const double inf = std::numeric_limits<double>::infinity();
    if (d.ell == 0) {
        d.degenerate = true;
        d.t = {d.tau};
        d.radii = {1.0, inf};
        d.k = {0.0};
        return d;
    }
    // N minimal with ell t_{N+1}^alpha >= 1
    std::vector<double> s{1.0};
    bool capped = false;
    for (std::size_t n = 1;; ++n) {
        s.push_back(capped_exp(log_step(alpha, lambda, n, std::log1p(s.back())), capped));
        if (d.ell * std::pow(d.tau * s.back(), alpha) >= 1 || capped) break;
        if (n > 100000) throw DomainError("recurrence does not reach the decomposition cutoff");
    }
    d.N = int(s.size()) - 2;
    for (double v : s) d.t.push_back(d.tau * v);
    d.radii.push_back(1.0);
    for (int n = 0; n <= d.N; ++n) d.radii.push_back(1.0 + d.t[std::size_t(n)]);
    d.radii.push_back(inf);

    d.k.assign(d.radii.size() - 1, 0.0);
    for (std::size_t lv = 0; lv < mu.levels.size(); ++lv) {
        double r = mu.levels[lv];
        auto it = std::upper_bound(d.radii.begin(), d.radii.end(), r);
        if (it == d.radii.begin()) continue;
        std::size_t i = std::size_t(it - d.radii.begin()) - 1;
        double mx = 0;
        for (std::size_t j = 0; j < mu.n_angle; ++j) mx = std::max(mx, std::abs(mu.at(lv, j)));
        d.k[i] = std::max(d.k[i], mx);
        // a node on a boundary radius belongs to both closed annuli
        if (i > 0 && r == d.radii[i]) d.k[i - 1] = std::max(d.k[i - 1], mx);
    }
    if (envelope)
        for (std::size_t i = 0; i < d.k.size(); ++i)
            d.k[i] = std::max(d.k[i], envelope(d.radii[i], std::isfinite(d.radii[i + 1]) ? d.radii[i + 1] : 1e300));
    return d;
}

double schwarzian_sum_bound(const AnnulusDecomposition& d) {
    double r = std::abs(d.zeta), s = 0;
    for (std::size_t i = 0; i < d.k.size(); ++i) {
        double g = d.radii[i] - r;
        s += d.k[i] / (g * g);
    }
    return 12 * s;
}

std::vector<TelescopingTerm> telescoping_terms(const AnnulusDecomposition& d) {
    std::vector<TelescopingTerm> out;
    if (d.degenerate) return out;
    const double base = d.ell * std::pow(d.tau, d.alpha);
    for (int n = -1; n <= d.N; ++n) {
        double tn = n < 0 ? 0.0 : d.t[std::size_t(n)];
        double q = d.tau / (d.tau + tn);
        double term = q * q * d.ell * std::pow(d.t[std::size_t(n + 1)], d.alpha);
        out.push_back({n, term, std::pow(d.lambda, double(n + 1)) * base});
    }
    return out;
}

std::vector<cplx> default_zeta_grid() {
    std::vector<cplx> z{0.0};
    for (double r : {0.3, 0.6, 0.9})
        for (int j = 0; j < 8; ++j) z.push_back(std::polar(r, kTwoPi * j / 8));
    return z;
}

AlphaBoundResult verify_alpha_bound(const Coefficient& mu, double alpha, double lambda,
                                    const std::vector<cplx>& zetas, double h, const SolverOptions& opt) {
    check_alpha(alpha);
    if (!(lambda > lambda_threshold(alpha) && lambda < 1))
        throw DomainError("lambda must lie between the recurrence threshold and 1");
    if (mu.interior_outer() > 0) throw DomainError("alpha bound needs a coefficient supported outside the disk");

    AlphaBoundResult R;
    R.alpha = alpha;
    R.lambda = lambda;
    R.C = 12 / (1 - lambda);
    R.h = h;
    BeltramiField field = polar_field(mu, 512, 12);
    R.ell = beltrami_weighted_norm(field, alpha).value;

    QuasiconformalMap F = solve(sample_grid(mu, h, 1.0), Normalization::disk_conformal, opt);
    ConformalJet J = conformal_jet(F);

    for (cplx z : zetas) {
        if (std::abs(z) > 0.95) {
            R.excluded.push_back(z);
            continue;
        }
        AlphaBoundPoint p;
        p.zeta = z;
        double tau = 1 - std::abs(z);
        p.s_abs = std::abs(ConformalJet::eval(J.S, z));
        p.lhs = std::pow(tau, 2 - alpha) * p.s_abs;
        p.rhs = R.C * R.ell;
        p.lemma = schwarzian_sum_bound(decompose_for_point(field, alpha, lambda, z, mu.envelope));
        if (p.rhs > 0) R.max_ratio = std::max(R.max_ratio, p.lhs / p.rhs);
        if (p.lemma > 0) R.max_lemma_ratio = std::max(R.max_lemma_ratio, p.s_abs / p.lemma);
        bool zero = p.s_abs < 1e-12 && p.rhs == 0;
        if (!(p.lhs < p.rhs || zero)) R.theorem_holds = false;
        if (!(p.s_abs <= p.lemma || zero)) R.lemma_holds = false;
        R.points.push_back(p);
    }
    return R;
}

} // namespace zq
