// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when a
// criterion fails, unless it is listed with --known-failures=a,b,... in which
// case it must still fail (a listed criterion that passes is an error).

#include "zq/beltrami.hpp"
#include "zq/bounds.hpp"
#include "zq/diffeo.hpp"
#include "zq/extensions.hpp"
#include "zq/spaces.hpp"
#include "zq/spectral.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace zq;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream note;
    void need(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note << " [failed: " << what << "]";
        }
    }
};

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> body;
};

PeriodicFunction lacunary(std::size_t n, double a, int lo, int hi) {
    return PeriodicFunction::sample(n, [=](double t) {
        double s = 0;
        for (int k = lo; k <= hi; ++k) s += std::pow(2.0, -a * k) * std::cos(std::ldexp(1.0, k) * t);
        return s;
    });
}

double max_diff(const PeriodicFunction& a, const PeriodicFunction& b) {
    double m = 0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a.values[j] - b.values[j]));
    return m;
}

// 1. spectral identities on random band-limited functions; the Hilbert
// transform is also compared with a direct sum over the sign multiplier
void spectral(Outcome& o) {
    const std::size_t n = 256;
    const int band = 64;
    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> g(0, 1);
    double inv = 0, tr = 0, direct = 0;
    for (int trial = 0; trial < 32; ++trial) {
        std::vector<cplx> c(2 * band + 1);
        for (auto& v : c) v = cplx(g(rng), g(rng));
        std::vector<cplx> f(n), hf(n);
        for (std::size_t j = 0; j < n; ++j) {
            double t = kTwoPi * double(j) / double(n);
            for (int m = -band; m <= band; ++m) {
                cplx e = c[m + band] * std::polar(1.0, m * t);
                f[j] += e;
                hf[j] += m >= 0 ? e : -e;
            }
        }
        PeriodicFunction F(f);
        double s = F.max_abs();
        PeriodicFunction H = hilbert_transform(F), HH = hilbert_transform(H), T = idft(szego_interior(F));
        double a = 0, b = 0, d = 0;
        for (std::size_t j = 0; j < n; ++j) {
            a = std::max(a, std::abs(HH.values[j] - f[j]));
            b = std::max(b, std::abs(T.values[j] - 0.5 * (f[j] + H.values[j])));
            d = std::max(d, std::abs(H.values[j] - hf[j]));
        }
        inv = std::max(inv, a / s);
        tr = std::max(tr, b / s);
        direct = std::max(direct, d / s);
    }
    o.note << "HH-I " << inv << ", trace " << tr << ", H vs direct sum " << direct;
    o.need(inv <= 1e-11, "involution");
    o.need(tr <= 1e-11, "Szego trace");
    o.need(direct <= 1e-11, "direct sum");
}

// 2. seminorm calculus
void seminorms(Outcome& o) {
    auto g = [](double t) { return (1 - std::cos(t)) / t; };
    double a = 0.5, b = 3.0;
    for (int i = 0; i < 200; ++i) {
        double x = b - (b - a) * 0.618033988749895, y = a + (b - a) * 0.618033988749895;
        if (g(x) > g(y))
            b = y;
        else
            a = x;
    }
    const double oracle = g(0.5 * (a + b));
    double zc = zygmund_seminorm(PeriodicFunction::sample(1 << 12, [](double t) { return std::cos(t); })).value;
    o.note << "zyg(cos) " << zc << " (oracle " << oracle << ")";
    o.need(std::abs(zc / 0.7246 - 1) <= 0.02, "0.7246 +- 2%");
    o.need(std::abs(zc / oracle - 1) <= 0.02, "oracle +- 2%");

    std::vector<PeriodicFunction> real_fixtures{
        PeriodicFunction::sample(1 << 12, [](double t) { return std::cos(t); }),
        lacunary(1 << 12, 0.5, 1, 12),
        lacunary(1 << 12, 1.0, 1, 12),
        lacunary(1 << 12, 0.7, 1, 9),
        random_band_limited(256, 64, 1),
        random_band_limited(1024, 200, 2),
        PeriodicFunction::sample(512, [](double) { return 3.0; }),
    };
    bool incl = true;
    for (auto& f : real_fixtures) incl = incl && zygmund_seminorm(f).value <= holder_seminorm(f, 1.0).value;
    o.need(incl, "C^Z <= C^L");

    const std::size_t n = 1 << 14;
    double z8 = zygmund_seminorm(lacunary(n, 1, 1, 8)).value, z12 = zygmund_seminorm(lacunary(n, 1, 1, 12)).value;
    double l8 = holder_seminorm(lacunary(n, 1, 1, 8), 1).value, l12 = holder_seminorm(lacunary(n, 1, 1, 12), 1).value;
    o.note << "; witness zyg " << z8 << " -> " << z12 << ", lip " << l8 << " -> " << l12 << " (x" << l12 / l8 << ")";
    o.need(z12 <= 2 * z8 && z8 <= 2 * z12, "C^Z within 2x");
    o.need(l12 >= 1.5 * l8, "Lipschitz growth >= 1.5x");
}

// 3. composition-operator endpoint chains and operator norm
void composition(Outcome& o) {
    auto sine = [](std::size_t n) {
        return from_log_derivative(PeriodicFunction::sample(n, [](double t) { return std::log(1 + 0.5 * std::cos(t)); }));
    };
    CircleDiffeo h = sine(256);
    // the lift really is x + 0.5 sin x
    double lift_err = 0;
    for (std::size_t j = 0; j < h.size(); ++j) {
        double x = h.lift.theta(j);
        lift_err = std::max(lift_err, std::abs(h.node_value(j) - x - 0.5 * std::sin(x)));
    }
    o.need(lift_err < 1e-12, "fixture lift");
    std::size_t viol = 0, pairs = 0;
    for (double a : {0.3, 0.5}) {
        auto p1 = [a](double t) {
            double s = 0;
            for (int k = 1; k <= 7; ++k) s += std::pow(2.0, -(1 - a) * k) * std::cos(std::ldexp(1.0, k) * t);
            return s;
        };
        auto p2 = [](double t) { return std::sin(t) + 0.1 * std::cos(5 * t); };
        auto d2 = [](double t) { return std::cos(t) - 0.5 * std::sin(5 * t); };
        ChainReport lo = endpoint_chain_low(h, p1, a), hi = endpoint_chain_high(h, p2, d2, a);
        viol += lo.violations + hi.violations;
        pairs += lo.pairs + hi.pairs;
    }
    o.note << pairs << " pairs, " << viol << " violations";
    o.need(viol == 0, "chains");
    CircleDiffeo H = sine(1024);
    for (double a : {0.3, 0.5}) {
        OperatorNormEstimate e = estimate_operator_norm(H, SpaceKind::holder, 32, 11, a);
        o.note << "; alpha " << a << ": estimate " << e.estimate << " vs 4*" << e.bound << ", k_disc " << e.k_disc;
        o.need(e.estimate <= 4 * e.bound, "operator norm");
    }
}

// 4. Beurling-Ahlfors diagnostics
void extension(Outcome& o) {
    auto mu0 = dilatation_field(ba_extend(CircleDiffeo::identity(512), dyadic_depths(512, 6)));
    double m0 = 0;
    for (auto v : mu0.values) m0 = std::max(m0, std::abs(v));
    o.note << "identity " << m0;
    o.need(m0 <= 1e-10, "identity");

    const std::size_t n = 1 << 12;
    auto h = from_log_derivative(PeriodicFunction::sample(n, [](double t) { return std::log(1 + 0.5 * std::cos(t)); }));
    auto p = decay_profile(dilatation_field(ba_extend(h, dyadic_depths(n, 6, 0.5))), 1);
    double lo = 1e300, hi = 0;
    for (auto [y, m] : p) lo = std::min(lo, m), hi = std::max(hi, m);
    o.note << "; Lipschitz profile ratio " << hi / lo << " over " << p.size() << " levels";
    o.need(p.size() >= 4 && hi / lo <= 10, "Lipschitz decay");

    const std::size_t nz = 1 << 14;
    auto hz = from_log_derivative(lacunary(nz, 1, 4, 12));
    auto q = decay_profile(dilatation_field(ba_extend(hz, dyadic_depths(nz, 4, 0.5))), 1);
    double gmin = 1e300;
    for (std::size_t k = 1; k < q.size(); ++k) gmin = std::min(gmin, q[k].second / q[k - 1].second);
    o.note << "; Zygmund-only growth min " << gmin;
    o.need(q.size() == 4 && gmin >= 1.3, "Zygmund growth");

    auto z = lacunary(n, 1, 1, 12);
    double sup = 0;
    for (auto [y, m] : decay_profile(dbar_field(ba_extend(z, dyadic_depths(n, 10, 1.0))), 0)) sup = std::max(sup, m);
    double K = sup / zygmund_seminorm(z).value;
    o.note << "; C^Z sup|dbar| " << sup << ", K_BA " << K;
    o.need(std::isfinite(sup), "C^Z finite");
}

// 5. radial stretch closed form
double radial_error(double h) {
    const double r0 = 1.3, r1 = 2.2, amp = 0.4;
    // closed form rho(r) z/|z|, rho(r) = r + amp L sin^4(pi s)/(4 pi c3), s = (r - r0)/L
    auto rho = [=](double r) {
        const double L = r1 - r0, c3 = 3 * std::sqrt(3.0) / 16;
        double s = (r - r0) / L;
        if (s <= 0 || s >= 1) return r;
        return r + amp * L * std::pow(std::sin(kPi * s), 4) / (4 * kPi * c3);
    };
    PlanarGrid g = sample_grid(radial_stretch(r0, r1, amp), h);
    QuasiconformalMap F = solve(g, Normalization::principal);
    double e = 0, fm = 0;
    for (std::size_t k = 0; k < g.geo.size(); ++k) {
        cplx z = g.geo.node(k);
        double r = std::abs(z);
        if (r > r1 || r == 0) continue;
        cplx f = rho(r) * z / r;
        e = std::max(e, std::abs(F.P[k] - f));
        fm = std::max(fm, std::abs(f));
    }
    return e / fm;
}

void solver(Outcome& o) {
    double e64 = radial_error(1.0 / 64), e128 = radial_error(1.0 / 128);
    o.note << "relative error " << e64 << " at 1/64, " << e128 << " at 1/128 (x" << e64 / e128 << ")";
    o.need(e64 <= 1e-2, "1e-2 at 1/64");
    o.need(e64 / e128 >= 1.5, "1.5x reduction");
}

const Coefficient& small_mu() {
    static const Coefficient mu = annulus_mode(1.4, 2.2, 0.1, 3);
    return mu;
}

// 6. welding identity
void welding(Outcome& o) {
    double sup = 0;
    for (int k = 0; k < 4096; ++k) sup = std::max(sup, std::abs(small_mu()(std::polar(1.4 + 0.8 * k / 4095.0, 0.3))));
    WeldingTriple a = welding_check(small_mu(), 1.0 / 32, 1024), b = welding_check(small_mu(), 1.0 / 64, 1024);
    o.note << "|mu|_inf " << sup << ", residual " << a.residual << " -> " << b.residual << " (x" << a.residual / b.residual
           << "), cross-check " << a.cross_check;
    o.need(std::abs(sup - 0.1) < 1e-6, "fixture sup 0.1");
    o.need(a.residual < 1e-3, "residual");
    o.need(a.residual / b.residual >= 2, "refinement");
}

// 7. Lambda consistency
void lambda(Outcome& o) {
    Coefficient z = zero_coefficient();
    PeriodicFunction L = lambda_map(z, small_mu(), 1.0 / 32, 1024);
    PeriodicFunction E = jet_boundary_log(conformal_jet(solve(sample_grid(small_mu(), 1.0 / 32), Normalization::disk_conformal)), 1024);
    double jet = max_diff(L, E);
    Coefficient mu1 = annulus_mode(0.4, 0.75, 0.1, 1), nu = annulus_mode(0.3, 0.7, 0.1, 2);
    TranslationReport t = translation_relation(mu1, small_mu(), nu, 1.0 / 32, 1024);
    TranslationReport t0 = translation_relation(mu1, small_mu(), z, 1.0 / 32, 1024);
    PeriodicFunction A = lambda_map(reflect(small_mu()), small_mu(), 1.0 / 64, 1024);
    double im = 0;
    for (auto v : A.values) im = std::max(im, std::abs(v.imag()));
    o.note << "jet trace " << jet << " (|Lambda| " << L.max_abs() << "), translation " << t.defect << ", nu=0 " << t0.defect
           << ", anti-diagonal imag " << im;
    o.need(jet <= 1e-3, "jet trace");
    o.need(L.max_abs() > 1e-3, "nontrivial Lambda");
    o.need(t.defect < 5e-3, "translation");
    o.need(t0.defect == 0.0, "nu = 0 exact");
    o.need(im <= 1e-6, "anti-diagonal");
}

// 8. recurrence
void recurrence_c(Outcome& o) {
    double worst = 0, first = 0;
    for (double a : {0.25, 0.5, 1.0, 1.5}) {
        double lam = lambda_threshold(a) + 0.05;
        RecurrenceTrace t = recurrence(a, lam, 200);
        for (std::size_t n = 1; n < t.exact_terms; ++n) {
            worst = std::max(worst, t.residual(n));
            if (t.s[n] < 1e100 && t.s[n] > 1e-100 && t.s[n - 1] > 1e-100) {
                long double q = 1.0L / (1.0L + t.s[n - 1]);
                long double lhs = q * q * std::pow((long double)t.s[n], (long double)a);
                worst = std::max(worst, std::abs(double(lhs / std::pow((long double)lam, (long double)n) - 1)));
            }
        }
        first = std::max(first, std::abs(t.s[1] / double(std::pow(4.0L * lam, 1.0L / a)) - 1));
        o.note << "a=" << a << ": log s200 " << t.log_s[200] << "; ";
        o.need(t.s[200] > 1e6, "divergence at alpha " + std::to_string(a).substr(0, 4));
    }
    o.note << "residual " << worst << ", s1 " << first;
    o.need(worst <= 1e-12, "identity residual");
    o.need(first <= 2 * std::numeric_limits<double>::epsilon(), "s1 exact");

    BeltramiField f = polar_field(annulus_mode(1.3, 2.0, 0.3, 3), 512, 12);
    double tel = 0;
    for (cplx zeta : default_zeta_grid()) {
        AnnulusDecomposition d = decompose_for_point(f, 1.0, 0.9, zeta);
        double tau = d.tau;
        for (auto [n, term, geo] : telescoping_terms(d)) {
            double g = std::pow(0.9, n + 1) * d.ell * tau;
            tel = std::max(tel, std::abs(term - g) / g);
            tel = std::max(tel, std::abs(geo - g) / g);
        }
    }
    o.note << ", telescoping " << tel;
    o.need(tel <= 1e-12, "telescoping");
}

// 9. Schwarzian bound end to end
void alpha_bound(Outcome& o) {
    for (const Coefficient& mu : {radial_stretch(1.3, 2.2, 0.4), annulus_mode(1.3, 2.0, 0.3, 3)}) {
        AlphaBoundResult r = verify_alpha_bound(mu, 1.0, 0.9, default_zeta_grid());
        double ell = beltrami_weighted_norm(polar_field(mu, 512, 12), 1.0).value;
        bool strict = true;
        for (auto& p : r.points) strict = strict && p.lhs < 120 * ell && p.s_abs <= p.lemma;
        o.note << mu.label << ": ell " << ell << ", max ratio " << r.max_ratio << ", lemma ratio " << r.max_lemma_ratio
               << ", points " << r.points.size() << "; ";
        o.need(r.points.size() == 25 && r.excluded.empty(), "all points tested");
        o.need(std::abs(r.ell - ell) <= 1e-12 * ell, "weighted norm");
        o.need(strict && r.theorem_holds, "theorem bound");
        o.need(r.lemma_holds, "lemma bound");
    }
}

// 10. joint finiteness
void equivalence(Outcome& o) {
    for (const Coefficient& mu : {radial_stretch(1.3, 2.2, 0.4), annulus_mode(1.3, 2.0, 0.3, 3), small_mu()}) {
        double mz = beltrami_weighted_norm(polar_field(mu, 512, 12), 1.0).value;
        ConformalJet J = conformal_jet(solve(sample_grid(mu, 1.0 / 32), Normalization::disk_conformal));
        double bz = bz_norm_series(J.log_deriv()).value;
        double as = az_norm_series(J.S).value;
        double a3 = az_norm_series(J.d3).value;
        std::vector<cplx> tr(1024);
        for (std::size_t j = 0; j < tr.size(); ++j) tr[j] = ConformalJet::eval(J.d1, std::polar(1.0, kTwoPi * j / 1024.0));
        double zf = zygmund_seminorm(PeriodicFunction(tr)).value;
        o.note << mu.label << ": " << mz << " " << bz << " " << as << " " << a3 << " " << zf << "; ";
        for (double v : {mz, bz, as, a3, zf}) o.need(std::isfinite(v), "finite for " + mu.label);
    }
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> known;
    for (int i = 1; i < argc; ++i) {
        const char* key = "--known-failures=";
        if (std::strncmp(argv[i], key, std::strlen(key)) == 0) {
            std::stringstream s(argv[i] + std::strlen(key));
            std::string tok;
            while (std::getline(s, tok, ',')) known.insert(std::stoi(tok));
        }
    }
    std::vector<Criterion> all{
        {1, "spectral identities", 1, spectral},
        {2, "seminorm calculus", 10, seminorms},
        {3, "composition endpoint inequalities", 30, composition},
        {4, "BA-extension diagnostics", 60, extension},
        {5, "Beltrami solver oracle", 300, solver},
        {6, "welding identity", 300, welding},
        {7, "Lambda consistency", 300, lambda},
        {8, "recurrence", 1, recurrence_c},
        {9, "Schwarzian bound end to end", 600, alpha_bound},
        {10, "joint finiteness", 600, equivalence},
    };
    int unexpected = 0;
    for (auto& c : all) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.note << " [exception: " << e.what() << "]";
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt >= c.limit_s) o.need(false, "runtime limit");
        std::printf("%s %2d %s (%.2f s / %.0f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, dt, c.limit_s,
                    o.note.str().c_str());
        std::fflush(stdout);
        bool listed = known.count(c.id) > 0;
        if (o.pass == listed) ++unexpected;
    }
    if (!known.empty()) {
        std::printf("known failures:");
        for (int k : known) std::printf(" %d", k);
        std::printf("\n");
    }
    return unexpected == 0 ? 0 : 1;
}
