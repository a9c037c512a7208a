#include "zq/beltrami.hpp"
#include "zq/bounds.hpp"
#include "zq/error.hpp"
#include "zq/extensions.hpp"
#include "zq/fixtures.hpp"
#include "zq/harness.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace zq;

namespace {

struct Globals {
    std::string config, out;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

json fixture_arg(const std::string& s) {
    if (!s.empty() && s.front() == '{') {
        try {
            return json::parse(s);
        } catch (const json::exception& e) {
            throw UsageError(std::string("fixture is not valid JSON: ") + e.what());
        }
    }
    return json(s);
}

HarnessConfig config_of(const Globals& g) {
    HarnessConfig c = g.config.empty() ? HarnessConfig{} : load_config(g.config);
    if (g.seed_set) c.seed = g.seed;
    return c;
}

Normalization parse_norm(const std::string& s) {
    if (s == "principal") return Normalization::principal;
    if (s == "disk_conformal") return Normalization::disk_conformal;
    if (s == "three_point") return Normalization::three_point;
    throw UsageError("unknown normalization '" + s + "'");
}

SolverOptions options_of(const HarnessConfig& c) {
    SolverOptions o;
    o.max_iterations = c.max_iterations;
    o.mu_cap = c.mu_cap;
    return o;
}

// JSON goes to stdout, or to <out>/<name>.json when --out is set.
void emit(const Globals& g, const std::string& name, const json& j) {
    if (g.out.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::filesystem::create_directories(g.out);
    std::ofstream f(std::filesystem::path(g.out) / (name + ".json"));
    f << j.dump(2) << "\n";
    std::cout << "wrote " << (std::filesystem::path(g.out) / (name + ".json")).string() << "\n";
}

void emit_csv(const Globals& g, const std::string& name, const std::string& csv) {
    if (g.out.empty()) {
        std::cout << csv;
        return;
    }
    std::filesystem::create_directories(g.out);
    std::ofstream f(std::filesystem::path(g.out) / (name + ".csv"));
    f << csv;
    std::cout << "wrote " << (std::filesystem::path(g.out) / (name + ".csv")).string() << "\n";
}

std::string num(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

int cmd_norms(const Globals& g, const std::string& fx, double alpha) {
    (void)config_of(g);
    PeriodicFunction f = make_periodic(fixture_arg(fx));
    json j{{"fixture", resolve_fixture(fixture_arg(fx))},
           {"n", f.size()},
           {"holder", holder_seminorm(f, alpha).value},
           {"lipschitz", holder_seminorm(f, 1.0).value},
           {"zygmund", zygmund_seminorm(f).value},
           {"besov", besov_seminorm(f, alpha).value},
           {"alpha", alpha}};
    CzSplit s = decompose_cz(f);
    j["cz"] = {{"bz_interior", s.bz_interior}, {"bz_exterior", s.bz_exterior}, {"cz_norm", s.cz_norm}, {"k_split", s.k_split}};
    emit(g, "norms", j);
    return 0;
}

int cmd_spectral(const Globals& g, const std::string& fx) {
    (void)config_of(g);
    PeriodicFunction f = make_periodic(fixture_arg(fx));
    PeriodicFunction H = hilbert_transform(f), HH = hilbert_transform(H), t = idft(szego_interior(f));
    double inv = 0, tr = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        inv = std::max(inv, std::abs(HH.values[k] - f.values[k]));
        tr = std::max(tr, std::abs(t.values[k] - 0.5 * (f.values[k] + H.values[k])));
    }
    emit(g, "spectral", {{"n", f.size()}, {"max_abs", f.max_abs()}, {"hilbert_involution", inv}, {"szego_trace", tr}});
    std::string csv = "theta,f,hilbert_re,hilbert_im\n";
    if (!g.out.empty()) {
        for (std::size_t k = 0; k < f.size(); ++k)
            csv += num(f.theta(k)) + "," + num(f.values[k].real()) + "," + num(H.values[k].real()) + "," +
                   num(H.values[k].imag()) + "\n";
        emit_csv(g, "hilbert", csv);
    }
    return 0;
}

int cmd_diffeo(const Globals& g, const std::string& fx, bool norm) {
    (void)config_of(g);
    CircleDiffeo h = make_diffeo(fixture_arg(fx));
    if (norm) h = normalize(h);
    emit(g, "diffeo", {{"n", h.size()},
                       {"normalized", h.normalized},
                       {"deriv_sup", h.deriv_sup()},
                       {"zygmund_log_deriv", zygmund_seminorm(h.log_deriv).value},
                       {"lipschitz_deriv", holder_seminorm(h.deriv, 1.0).value}});
    if (!g.out.empty()) {
        std::string csv = "x,h,deriv\n";
        for (std::size_t j = 0; j < h.size(); ++j)
            csv += num(h.lift.theta(j)) + "," + num(h.node_value(j)) + "," + num(h.deriv.values[j].real()) + "\n";
        emit_csv(g, "diffeo", csv);
    }
    return 0;
}

int cmd_extend(const Globals& g, const std::string& fx, std::size_t levels, double ymax) {
    (void)config_of(g);
    json spec = resolve_fixture(fixture_arg(fx));
    std::vector<std::pair<double, double>> p;
    std::string what;
    if (fixture_class(spec) == FixtureClass::diffeo) {
        CircleDiffeo h = make_diffeo(spec);
        p = decay_profile(dilatation_field(ba_extend(h, dyadic_depths(h.size(), levels, ymax))), 1);
        what = "dilatation_order1";
    } else {
        PeriodicFunction f = make_periodic(spec);
        p = decay_profile(dbar_field(ba_extend(f, dyadic_depths(f.size(), levels, ymax))), 0);
        what = "dbar_order0";
    }
    std::string csv = "depth," + what + "\n";
    for (auto [y, m] : p) csv += num(y) + "," + num(m) + "\n";
    emit_csv(g, "profile", csv);
    return 0;
}

int cmd_solve(const Globals& g, const std::string& mu, const std::string& norm, double h) {
    HarnessConfig c = config_of(g);
    json spec = resolve_fixture(fixture_arg(mu));
    PlanarGrid grid = fixture_class(spec) == FixtureClass::grid ? make_grid(spec)
                                                                  : sample_grid(make_coefficient(spec), h > 0 ? h : c.spacing);
    QuasiconformalMap F = solve(grid, parse_norm(norm), options_of(c));
    json probes = json::array();
    for (cplx z : {cplx(0.0), cplx(1.0), cplx(0.0, 1.0), cplx(-2.0), cplx(3.0, 1.0)}) {
        cplx w = F.eval(z);
        probes.push_back({{"z", {z.real(), z.imag()}}, {"F", {w.real(), w.imag()}}});
    }
    emit(g, "solve", {{"normalization", normalization_name(F.normalization)},
                      {"spacing", F.geo.h},
                      {"grid", F.geo.M},
                      {"iterations", F.iterations},
                      {"residual", F.residual},
                      {"contraction", F.contraction},
                      {"probes", probes}});
    return 0;
}

int cmd_weld(const Globals& g, const std::string& mu, double h, std::size_t n, bool report) {
    HarnessConfig c = config_of(g);
    const double sp = h > 0 ? h : c.spacing;
    const std::size_t nn = n ? n : c.welding_n;
    WeldingTriple w = welding_check(make_coefficient(fixture_arg(mu)), sp, nn, options_of(c));
    json j{{"spacing", sp},
           {"n", nn},
           {"residual", w.residual},
           {"cross_check", w.cross_check},
           {"circularity", w.circularity},
           {"zygmund", {{"log_f", w.zyg_log_f}, {"log_g_h", w.zyg_log_g_h}, {"log_h", w.zyg_log_h}}}};
    if (report) {
        VerificationReport r = one_sided("welding-log-identity", w.residual, 1e-3);
        r.inputs_digest = digest({{"mu", resolve_fixture(fixture_arg(mu))}, {"spacing", sp}, {"n", nn}});
        r.environment = {{"spacing", sp}, {"n", nn}, {"max_iterations", c.max_iterations}, {"mu_cap", c.mu_cap}};
        j = r.to_json();
        emit(g, "weld", j);
        return r.passed ? 0 : 1;
    }
    emit(g, "weld", j);
    return 0;
}

int cmd_lambda(const Globals& g, const std::string& mu1, const std::string& mu2, double h, std::size_t n) {
    HarnessConfig c = config_of(g);
    const double sp = h > 0 ? h : c.spacing;
    const std::size_t nn = n ? n : c.welding_n;
    PeriodicFunction L = lambda_map(make_coefficient(fixture_arg(mu1)), make_coefficient(fixture_arg(mu2)), sp, nn,
                                    options_of(c));
    double im = 0;
    for (auto v : L.values) im = std::max(im, std::abs(v.imag()));
    emit(g, "lambda", {{"spacing", sp}, {"n", nn}, {"max_abs", L.max_abs()}, {"max_imag", im},
                       {"zygmund", zygmund_seminorm(L).value}});
    if (!g.out.empty()) {
        std::string csv = "theta,re,im\n";
        for (std::size_t j = 0; j < L.size(); ++j)
            csv += num(L.theta(j)) + "," + num(L.values[j].real()) + "," + num(L.values[j].imag()) + "\n";
        emit_csv(g, "lambda", csv);
    }
    return 0;
}

int cmd_recurrence(const Globals& g, double alpha, double lambda, std::size_t n) {
    (void)config_of(g);
    RecurrenceTrace t = recurrence(alpha, lambda, n);
    std::string csv = "n,s,log_s,residual\n";
    for (std::size_t k = 0; k <= n; ++k)
        csv += std::to_string(k) + "," + num(t.s[k]) + "," + num(t.log_s[k]) + "," +
               (k == 0 ? std::string("0") : num(t.residual(k))) + "\n";
    emit_csv(g, "recurrence", csv);
    return 0;
}

int cmd_verify_bound(const Globals& g, const std::string& mu, double alpha, double lambda) {
    HarnessConfig c = config_of(g);
    if (alpha <= 0) alpha = c.alpha;
    if (lambda <= 0) lambda = c.lambda != 0 && alpha == c.alpha ? c.lambda : default_lambda(alpha);
    AlphaBoundResult r = verify_alpha_bound(make_coefficient(fixture_arg(mu)), alpha, lambda, default_zeta_grid(),
                                            c.spacing, options_of(c));
    json pts = json::array();
    for (auto& p : r.points)
        pts.push_back({{"zeta", {p.zeta.real(), p.zeta.imag()}}, {"S", p.s_abs}, {"lhs", p.lhs}, {"rhs", p.rhs},
                       {"lemma", p.lemma}});
    emit(g, "bounds", {{"alpha", r.alpha}, {"lambda", r.lambda}, {"C", r.C}, {"ell", r.ell},
                       {"max_ratio", r.max_ratio}, {"max_lemma_ratio", r.max_lemma_ratio},
                       {"theorem_holds", r.theorem_holds}, {"lemma_holds", r.lemma_holds},
                       {"excluded", r.excluded.size()}, {"points", pts}});
    return r.theorem_holds && r.lemma_holds ? 0 : 1;
}

int cmd_verify_all(const Globals& g, const std::string& suite) {
    HarnessConfig c = config_of(g);
    auto reports = run_suite(suite, c);
    json j = reports_to_json(suite, reports);
    j["config"] = c.to_json();
    emit(g, suite, j);
    for (auto& r : reports) std::cerr << (r.passed ? "PASS " : "FAIL ") << r.check << "\n";
    return all_passed(reports) ? 0 : 1;
}

int cmd_list() {
    std::cout << "fixtures:\n";
    for (auto& f : list_fixtures()) std::cout << "  " << f.name << " [" << class_name(f.cls) << "] " << f.description << "\n";
    std::cout << "suites:\n";
    for (auto& s : suite_names()) std::cout << "  " << s << "\n";
    std::cout << "checks:\n";
    for (auto& id : check_ids()) std::cout << "  " << id << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zq: numerical checks for quasiconformal maps, welding and Schwarzian bounds"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "JSON config file");
    app.add_option("--out", g.out, "output directory");
    app.add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { g.seed = s, g.seed_set = true; }, "seed for randomized trials");

    std::function<int()> action;
    std::string fx, mu, mu2, norm = "principal", suite = "all", id;
    double alpha = 0.5, lambda = 0, spacing = 0, ymax = 1.0;
    std::size_t n = 0, levels = 6;
    bool flag = false;

    auto* norms = app.add_subcommand("norms", "seminorms of a periodic fixture");
    norms->add_option("--fixture", fx)->required();
    norms->add_option("--alpha", alpha, "Holder/Besov exponent");
    norms->callback([&] { action = [&] { return cmd_norms(g, fx, alpha); }; });

    auto* spectral = app.add_subcommand("spectral", "Hilbert and Szego identities for a fixture");
    spectral->add_option("--fixture", fx)->required();
    spectral->callback([&] { action = [&] { return cmd_spectral(g, fx); }; });

    auto* diffeo = app.add_subcommand("diffeo", "circle diffeomorphism summary");
    diffeo->add_option("--fixture", fx)->required();
    diffeo->add_flag("--normalize", flag, "three-point normalize first");
    diffeo->callback([&] { action = [&] { return cmd_diffeo(g, fx, flag); }; });

    auto* extend = app.add_subcommand("extend", "Beurling-Ahlfors decay profile (CSV)");
    extend->add_option("--fixture", fx)->required();
    extend->add_option("--levels", levels);
    extend->add_option("--ymax", ymax);
    extend->callback([&] { action = [&] { return cmd_extend(g, fx, levels, ymax); }; });

    auto* solvec = app.add_subcommand("solve", "solve the Beltrami equation");
    solvec->add_option("--mu", mu, "coefficient or grid fixture")->required();
    solvec->add_option("--normalize", norm, "principal | disk_conformal | three_point");
    solvec->add_option("--spacing", spacing);
    solvec->callback([&] { action = [&] { return cmd_solve(g, mu, norm, spacing); }; });

    auto* weld = app.add_subcommand("weld", "welding identity for an exterior coefficient");
    weld->add_option("--mu", mu)->required();
    weld->add_option("--spacing", spacing);
    weld->add_option("--n", n);
    weld->add_flag("--report", flag, "emit a verification report");
    weld->callback([&] { action = [&] { return cmd_weld(g, mu, spacing, n, flag); }; });

    auto* lam = app.add_subcommand("lambda", "Lambda(mu1, mu2) on the circle");
    lam->add_option("--mu1", mu)->required();
    lam->add_option("--mu2", mu2)->required();
    lam->add_option("--spacing", spacing);
    lam->add_option("--n", n);
    lam->callback([&] { action = [&] { return cmd_lambda(g, mu, mu2, spacing, n); }; });

    auto* bounds = app.add_subcommand("bounds", "recurrence traces and the Schwarzian bound");
    bounds->require_subcommand(1);
    auto* rec = bounds->add_subcommand("recurrence", "s_n trace as CSV");
    double ralpha = 1.0, rlambda = 0.9;
    std::size_t rn = 200;
    rec->add_option("--alpha", ralpha);
    rec->add_option("--lambda", rlambda);
    rec->add_option("--n", rn);
    rec->callback([&] { action = [&] { return cmd_recurrence(g, ralpha, rlambda, rn); }; });
    auto* ver = bounds->add_subcommand("verify", "check the bound at the default points");
    double valpha = 0;
    ver->add_option("--mu", mu)->required();
    ver->add_option("--alpha", valpha);
    ver->add_option("--lambda", lambda);
    ver->callback([&] { action = [&] { return cmd_verify_bound(g, mu, valpha, lambda); }; });

    auto* all = app.add_subcommand("verify-all", "run a named suite");
    all->add_option("--suite", suite);
    all->callback([&] { action = [&] { return cmd_verify_all(g, suite); }; });

    auto* ex = app.add_subcommand("explain", "describe a check");
    ex->add_option("id", id)->required();
    ex->callback([&] {
        action = [&] {
            std::cout << explain(id);
            return 0;
        };
    });

    auto* ls = app.add_subcommand("list", "fixtures, suites and checks");
    ls->callback([&] { action = [&] { return cmd_list(); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "zq: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "zq: " << e.what() << "\n";
        return 1;
    }
}
