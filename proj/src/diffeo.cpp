#include "zq/diffeo.hpp"

#include "zq/error.hpp"
#include "zq/mobius.hpp"
#include "zq/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace zq {

namespace {

void validate(const CircleDiffeo& h, double mean_tol) {
    const std::size_t n = h.lift.size();
    if (h.deriv.size() != n || h.log_deriv.size() != n) throw SizeError("diffeo sample arrays differ in length");
    const double dx = kTwoPi / double(n);
    for (std::size_t j = 0; j < n; ++j) {
        double next = (j + 1 < n ? h.lift.values[j + 1].real() : h.lift.values[0].real()) + dx;
        if (!(next - h.lift.values[j].real() > 0))
            throw DegeneracyError("lift is not strictly increasing at node " + std::to_string(j));
        double d = h.deriv.values[j].real();
        if (!(d > 0)) throw DegeneracyError("derivative is not positive at node " + std::to_string(j));
        if (std::abs(std::exp(h.log_deriv.values[j].real()) - d) > 1e-10 * d)
            throw DegeneracyError("log derivative inconsistent at node " + std::to_string(j));
    }
    double mean = 0;
    for (auto z : h.deriv.values) mean += z.real();
    mean /= double(n);
    if (std::abs(mean - 1.0) > mean_tol)
        throw DegeneracyError("derivative mean " + std::to_string(mean) + " differs from 1");
}

CircleDiffeo make(std::vector<double> u, std::vector<double> logd, bool norm, double mean_tol) {
    std::vector<double> d(logd.size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = std::exp(logd[j]);
    CircleDiffeo h;
    h.lift = PeriodicFunction::from_real(u);
    h.deriv = PeriodicFunction::from_real(d);
    h.log_deriv = PeriodicFunction::from_real(logd);
    h.normalized = norm;
    validate(h, mean_tol);
    return h;
}

// Hermite cubic of the lift on the cell containing x, with slope.
struct HermiteEval {
    double value, slope;
};

HermiteEval hermite(const CircleDiffeo& h, double x) {
    const std::size_t n = h.size();
    const double dx = kTwoPi / double(n);
    double k = std::floor(x / kTwoPi);
    double xr = x - k * kTwoPi;
    std::size_t j = std::min<std::size_t>(std::size_t(xr / dx), n - 1);
    double s = (xr - double(j) * dx) / dx;
    double h0 = double(j) * dx + h.lift.values[j].real();
    double h1 = double(j + 1) * dx + h.lift.values[(j + 1) % n].real();
    double d0 = h.deriv.values[j].real(), d1 = h.deriv.values[(j + 1) % n].real();
    double sec = (h1 - h0) / dx;
    // Fritsch-Carlson limiter
    double a = d0 / sec, b = d1 / sec;
    double r2 = a * a + b * b;
    if (r2 > 9.0) {
        double t = 3.0 / std::sqrt(r2);
        d0 = t * a * sec;
        d1 = t * b * sec;
    }
    double s2 = s * s, s3 = s2 * s;
    double v = (2 * s3 - 3 * s2 + 1) * h0 + (s3 - 2 * s2 + s) * dx * d0 + (-2 * s3 + 3 * s2) * h1 +
               (s3 - s2) * dx * d1;
    double sl = ((6 * s2 - 6 * s) * h0 + (3 * s2 - 4 * s + 1) * dx * d0 + (-6 * s2 + 6 * s) * h1 +
                 (3 * s2 - 2 * s) * dx * d1) / dx;
    return {v + k * kTwoPi, sl};
}

double circle_dist(double a, double b) {
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

} // namespace

CircleDiffeo::CircleDiffeo(PeriodicFunction u, PeriodicFunction d, PeriodicFunction logd, bool norm)
    : lift(std::move(u)), deriv(std::move(d)), log_deriv(std::move(logd)), normalized(norm) {
    validate(*this, 1e-10);
}

CircleDiffeo CircleDiffeo::identity(std::size_t n) {
    return make(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), true, 1e-10);
}

CircleDiffeo CircleDiffeo::rotation(std::size_t n, double c) {
    return make(std::vector<double>(n, c), std::vector<double>(n, 0.0), c == 0.0, 1e-10);
}

std::vector<double> CircleDiffeo::node_values() const {
    std::vector<double> v(size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = node_value(j);
    return v;
}

bool CircleDiffeo::is_identity() const {
    for (std::size_t j = 0; j < size(); ++j)
        if (lift.values[j].real() != 0.0 || log_deriv.values[j].real() != 0.0) return false;
    return true;
}

double CircleDiffeo::eval(double x) const { return hermite(*this, x).value; }

std::vector<double> CircleDiffeo::eval(const std::vector<double>& xs) const {
    std::vector<double> r(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) r[i] = hermite(*this, xs[i]).value;
    return r;
}

std::vector<double> CircleDiffeo::eval_log_deriv(const std::vector<double>& xs) const {
    auto v = trig_eval(dft(log_deriv), xs);
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].real();
    return r;
}

std::vector<double> CircleDiffeo::eval_deriv(const std::vector<double>& xs) const {
    auto r = eval_log_deriv(xs);
    for (auto& v : r) v = std::exp(v);
    return r;
}

double CircleDiffeo::deriv_sup() const {
    PeriodicFunction fine = resample(deriv, 8 * size());
    double m = 0;
    for (auto z : fine.values) m = std::max(m, z.real());
    for (auto z : deriv.values) m = std::max(m, z.real());
    return m;
}

CircleDiffeo from_log_derivative(const PeriodicFunction& phi) {
    const std::size_t n = phi.size();
    std::vector<double> p = phi.real();
    double mean = 0;
    for (double v : p) mean += std::exp(v);
    mean /= double(n);
    const double c = -std::log(mean);
    std::vector<double> logd(n), d(n);
    for (std::size_t j = 0; j < n; ++j) {
        logd[j] = p[j] + c;
        d[j] = std::exp(logd[j]);
    }
    // u = antiderivative of h' - 1, spectrally, with u(0) = 0
    FourierCoefficients cf = dft(PeriodicFunction::from_real(d));
    cf.at(0) = 0.0;
    cf.at(cf.lowest()) = 0.0;
    for (int m = cf.lowest() + 1; m <= cf.highest(); ++m)
        if (m != 0) cf.at(m) /= cplx(0, m);
    PeriodicFunction ua = idft(cf);
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = ua.values[j].real() - ua.values[0].real();
    u[0] = 0.0;
    return make(std::move(u), std::move(logd), false, 1e-10);
}

CircleDiffeo compose(const CircleDiffeo& h1, const CircleDiffeo& h2) {
    if (h1.size() != h2.size()) throw SizeError("composed diffeos differ in sample count");
    if (h1.is_identity()) return h2;
    const std::size_t n = h2.size();
    std::vector<double> y = h2.node_values();
    std::vector<double> hy = h1.eval(y);
    std::vector<double> l1 = h1.eval_log_deriv(y);
    std::vector<double> u(n), logd(n);
    for (std::size_t j = 0; j < n; ++j) {
        u[j] = hy[j] - h2.lift.theta(j);
        logd[j] = l1[j] + h2.log_deriv.values[j].real();
    }
    return make(std::move(u), std::move(logd), h1.normalized && h2.normalized, 1e-6);
}

CircleDiffeo invert(const CircleDiffeo& h) {
    const std::size_t n = h.size();
    const double dx = kTwoPi / double(n);
    std::vector<double> hv = h.node_values();
    auto ext = [&](long k) {
        long q = k >= 0 ? k / long(n) : -((-k + long(n) - 1) / long(n));
        long r = k - q * long(n);
        return hv[std::size_t(r)] + double(q) * kTwoPi;
    };
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double y = double(j) * dx;
        long lo = -long(n), hi = 2 * long(n);
        while (hi - lo > 1) {
            long mid = (lo + hi) / 2;
            (ext(mid) <= y ? lo : hi) = mid;
        }
        double a = double(lo) * dx, b = double(hi) * dx;
        double t = 0.5 * (a + b);
        for (int it = 0; it < 60; ++it) {
            auto he = hermite(h, t);
            double f = he.value - y;
            if (f == 0) break;
            (f < 0 ? a : b) = t;
            double tn = t - f / he.slope;
            t = (tn > a && tn < b) ? tn : 0.5 * (a + b);
            if (b - a < 1e-15 || std::abs(f) < 1e-15) break;
        }
        x[j] = t;
    }
    std::vector<double> ld = h.eval_log_deriv(x);
    std::vector<double> u(n), logd(n);
    for (std::size_t j = 0; j < n; ++j) {
        u[j] = x[j] - double(j) * dx;
        logd[j] = -ld[j];
    }
    return make(std::move(u), std::move(logd), h.normalized, 1e-6);
}

CircleDiffeo normalize(const CircleDiffeo& h) {
    const std::size_t n = h.size();
    const std::size_t q1 = n / 4, q3 = 3 * n / 4;
    auto pt = [&](std::size_t j) { return std::polar(1.0, h.node_value(j)); };
    const cplx I(0, 1);
    cplx p0 = pt(0), p1 = pt(q1), p3 = pt(q3);
    if (std::abs(p0 - 1.0) <= 1e-14 && std::abs(p1 - I) <= 1e-14 && std::abs(p3 + I) <= 1e-14) {
        CircleDiffeo r = h;
        r.normalized = true;
        return r;
    }
    Mobius M = Mobius::three_point(p0, p1, p3, 1.0, I, -I);
    std::vector<double> u(n), logd(n);
    double prev = 0;
    for (std::size_t j = 0; j < n; ++j) {
        cplx z = pt(j);
        double a = std::arg(M(z));
        double lifted;
        if (j == 0) {
            lifted = 0;
        } else {
            double step = std::remainder(a - prev, kTwoPi);
            lifted = u[j - 1] + h.lift.theta(j - 1) + step;
            if (step < 0) lifted += kTwoPi;
        }
        prev = a;
        u[j] = lifted - h.lift.theta(j);
        logd[j] = h.log_deriv.values[j].real() + std::log(std::abs(M.derivative(z)));
    }
    u[0] = 0;
    if (std::abs(u[q1]) <= 1e-12) u[q1] = 0;
    if (std::abs(u[q3]) <= 1e-12) u[q3] = 0;
    return make(std::move(u), std::move(logd), true, 1e-6);
}

PeriodicFunction composition_operator(const CircleDiffeo& h, const PeriodicFunction& f) {
    if (f.size() != h.size()) throw SizeError("function and diffeo differ in sample count");
    if (h.is_identity()) return f;
    auto v = trig_eval(dft(f), h.node_values());
    if (f.is_real) {
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].real();
        return PeriodicFunction::from_real(r);
    }
    return PeriodicFunction(std::move(v));
}

PeriodicFunction affine_translation(const CircleDiffeo& h, const PeriodicFunction& f) {
    PeriodicFunction p = composition_operator(h, f);
    for (std::size_t j = 0; j < p.size(); ++j) p.values[j] += h.log_deriv.values[j].real();
    return p;
}

PeriodicFunction random_band_limited(std::size_t n, std::size_t max_mode, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    max_mode = std::max<std::size_t>(1, std::min(max_mode, n / 2 - 1));
    std::size_t band = 1 + std::size_t(rng() % max_mode);
    FourierCoefficients c(n);
    for (std::size_t k = 1; k <= band; ++k) {
        cplx a(gauss(rng), gauss(rng));
        a /= double(k);
        c.at(int(k)) = 0.5 * a;
        c.at(-int(k)) = 0.5 * std::conj(a);
    }
    PeriodicFunction f = idft(c);
    return PeriodicFunction::from_real(f.real());
}

OperatorNormEstimate estimate_operator_norm(const CircleDiffeo& h, SpaceKind space, std::size_t trials,
                                            std::uint64_t seed, double alpha) {
    const std::size_t n = h.size();
    auto sem = [&](const PeriodicFunction& f) {
        return space == SpaceKind::zygmund ? zygmund_seminorm(f).value : holder_seminorm(f, alpha).value;
    };
    std::vector<double> ratio(trials, -1.0);
    for (std::size_t t = 0; t < trials; ++t) {
        PeriodicFunction f = random_band_limited(n, n / 8, seed * 1000003ULL + t);
        double s0 = sem(f);
        if (!(s0 > 1e-300)) continue;
        ratio[t] = sem(composition_operator(h, f)) / s0;
    }
    OperatorNormEstimate r;
    for (double v : ratio) {
        if (v < 0) {
            ++r.skipped;
            continue;
        }
        ++r.trials_used;
        r.estimate = std::max(r.estimate, v);
    }
    r.bound = h.deriv_sup() + holder_seminorm(h.deriv, alpha).value;
    r.k_disc = r.estimate / r.bound;
    return r;
}

ChainReport endpoint_chain_low(const CircleDiffeo& h, const std::function<double(double)>& phi1, double alpha) {
    const std::size_t n = h.size();
    std::vector<double> y = h.node_values();
    std::vector<double> pts;
    std::vector<cplx> vals;
    for (std::size_t j = 0; j < n; ++j) {
        pts.push_back(h.lift.theta(j));
        vals.push_back(phi1(h.lift.theta(j)));
        pts.push_back(y[j]);
        vals.push_back(phi1(y[j]));
    }
    const double beta = 1.0 - alpha;
    const double norm1 = holder_seminorm_points(pts, vals, beta);
    const double hs = h.deriv_sup();
    std::vector<double> py(n);
    for (std::size_t j = 0; j < n; ++j) py[j] = phi1(y[j]);

    ChainReport rep;
    rep.link_worst.assign(2, 0.0);
    rep.h_sup = hs;
    rep.phi_norm = norm1;
    const double slack = 1e-12;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            double d = circle_dist(h.lift.theta(j), h.lift.theta(k));
            double dh = circle_dist(y[j], y[k]);
            double L0 = std::abs(py[j] - py[k]);
            double L1 = norm1 * std::pow(dh, beta);
            double L2 = norm1 * std::pow(hs, beta) * std::pow(d, beta);
            ++rep.pairs;
            if (L1 > 0) rep.link_worst[0] = std::max(rep.link_worst[0], L0 / L1);
            if (L2 > 0) rep.link_worst[1] = std::max(rep.link_worst[1], L1 / L2);
            if (L0 > L1 * (1 + slack) || L1 > L2 * (1 + slack)) ++rep.violations;
        }
    return rep;
}

ChainReport endpoint_chain_high(const CircleDiffeo& h, const std::function<double(double)>&,
                                const std::function<double(double)>& dphi2, double alpha) {
    const std::size_t n = h.size();
    std::vector<double> y = h.node_values();
    std::vector<double> pts;
    std::vector<cplx> vals;
    double sup2 = 0;
    for (std::size_t j = 0; j < n; ++j) {
        for (double p : {h.lift.theta(j), y[j]}) {
            double v = dphi2(p);
            pts.push_back(p);
            vals.push_back(v);
            sup2 = std::max(sup2, std::abs(v));
        }
    }
    const double hold2 = holder_seminorm_points(pts, vals, alpha);
    const double norm2 = hold2 + sup2;
    const double hs = h.deriv_sup();
    const double hh = holder_seminorm(h.deriv, alpha).value;
    std::vector<double> a(n), d1(n);
    for (std::size_t j = 0; j < n; ++j) {
        a[j] = dphi2(y[j]);
        d1[j] = h.deriv.values[j].real();
    }
    ChainReport rep;
    rep.link_worst.assign(3, 0.0);
    rep.h_sup = hs;
    rep.h_holder = hh;
    rep.phi_norm = norm2;
    const double slack = 1e-12;
    const double c2 = hold2 * std::pow(hs, 1 + alpha) + sup2 * hh;
    const double c3 = norm2 * std::pow(hs + hh, 1 + alpha);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            double da = std::pow(circle_dist(h.lift.theta(j), h.lift.theta(k)), alpha);
            double L0 = std::abs(a[j] * d1[j] - a[k] * d1[k]);
            double L1 = std::abs(a[j] - a[k]) * hs + sup2 * std::abs(d1[j] - d1[k]);
            double L2 = c2 * da;
            double L3 = c3 * da;
            ++rep.pairs;
            if (L1 > 0) rep.link_worst[0] = std::max(rep.link_worst[0], L0 / L1);
            if (L2 > 0) rep.link_worst[1] = std::max(rep.link_worst[1], L1 / L2);
            if (L3 > 0) rep.link_worst[2] = std::max(rep.link_worst[2], L2 / L3);
            if (L0 > L1 * (1 + slack) || L1 > L2 * (1 + slack) || L2 > L3 * (1 + slack)) ++rep.violations;
        }
    return rep;
}

} // namespace zq
