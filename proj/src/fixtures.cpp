#include "zq/fixtures.hpp"

#include "zq/error.hpp"

#include <cmath>
#include <cstdio>

namespace zq {

namespace {

template <class T>
T param(const json& s, const char* key, T fallback) {
    auto it = s.find(key);
    if (it == s.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw UsageError(std::string("fixture parameter '") + key + "' has the wrong type");
    }
}

std::size_t grid_n(const json& s, std::size_t fallback = 4096) {
    auto n = param<std::size_t>(s, "n", fallback);
    if (!is_power_of_two(n) || n < 16) throw UsageError("fixture n must be a power of two >= 16");
    return n;
}

double lacunary(double t, double a, int lo, int hi) {
    double s = 0;
    for (int k = lo; k <= hi; ++k) s += std::pow(2.0, -a * k) * std::cos(std::ldexp(1.0, k) * t);
    return s;
}

std::vector<FixtureInfo> build_catalog() {
    return {
        {"annulus-mode", FixtureClass::coefficient,
         {{"kind", "annulus-mode"}, {"r0", 1.3}, {"r1", 2.0}, {"amp", 0.3}, {"m", 3}},
         "0.3 sin^4 bump times e^{3i theta} on 1.3 <= |z| <= 2"},
        {"annulus-mode-small", FixtureClass::coefficient,
         {{"kind", "annulus-mode"}, {"r0", 1.4}, {"r1", 2.2}, {"amp", 0.1}, {"m", 3}},
         "sup norm 0.1 mode used for the welding checks"},
        {"cosine", FixtureClass::periodic, {{"kind", "cosine"}, {"n", 4096}}, "cos theta"},
        {"logderiv-zygmund", FixtureClass::diffeo,
         {{"kind", "diffeo-from-logderiv"}, {"of", {{"kind", "zygmund-series"}, {"terms", 12}, {"n", 4096}}}, {"scale", 1.0}},
         "diffeo whose log-derivative is the 12-term Zygmund series"},
        {"radial-stretch", FixtureClass::coefficient,
         {{"kind", "radial-stretch"}, {"r0", 1.3}, {"r1", 2.2}, {"amp", 0.4}},
         "radial stretch with closed-form map, peak stretch 1.4"},
        {"random-band-limited", FixtureClass::periodic,
         {{"kind", "random-band-limited"}, {"n", 256}, {"modes", 64}, {"seed", 1}},
         "random real trigonometric polynomial"},
        {"sine-diffeo", FixtureClass::diffeo, {{"kind", "sine-diffeo"}, {"a", 0.5}, {"k", 1}, {"n", 1024}},
         "h(x) = x + 0.5 sin x"},
        {"weierstrass", FixtureClass::periodic,
         {{"kind", "weierstrass"}, {"alpha", 0.5}, {"terms", 12}, {"n", 4096}},
         "sum 2^{-alpha k} cos 2^k theta, k = 1..terms"},
        {"zero", FixtureClass::coefficient, {{"kind", "zero"}}, "identically zero coefficient"},
        {"zygmund-series", FixtureClass::periodic, {{"kind", "zygmund-series"}, {"terms", 12}, {"n", 4096}},
         "sum 2^{-k} cos 2^k theta, k = 1..terms"},
    };
}

} // namespace

const std::vector<FixtureInfo>& list_fixtures() {
    static const std::vector<FixtureInfo> catalog = build_catalog();
    return catalog;
}

std::string class_name(FixtureClass c) {
    switch (c) {
    case FixtureClass::periodic: return "periodic";
    case FixtureClass::diffeo: return "diffeo";
    case FixtureClass::coefficient: return "coefficient";
    case FixtureClass::grid: return "grid";
    }
    return "?";
}

json resolve_fixture(const json& spec) {
    if (spec.is_string()) {
        for (auto& f : list_fixtures())
            if (f.name == spec.get<std::string>()) return f.spec;
        throw UsageError("unknown fixture '" + spec.get<std::string>() + "'");
    }
    if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string())
        throw UsageError("fixture spec must be a catalog name or an object with a kind");
    (void)fixture_class(spec);
    return spec;
}

FixtureClass fixture_class(const json& spec) {
    const std::string k = spec.at("kind").get<std::string>();
    if (k == "cosine" || k == "weierstrass" || k == "zygmund-series" || k == "random-band-limited")
        return FixtureClass::periodic;
    if (k == "sine-diffeo" || k == "diffeo-from-logderiv") return FixtureClass::diffeo;
    if (k == "zero" || k == "radial-stretch" || k == "annulus-mode") return FixtureClass::coefficient;
    if (k == "grid") return FixtureClass::grid;
    throw UsageError("unknown fixture kind '" + k + "'");
}

PeriodicFunction make_periodic(const json& spec0) {
    json s = resolve_fixture(spec0);
    const std::string k = s["kind"];
    if (k == "cosine") return PeriodicFunction::sample(grid_n(s), [](double t) { return std::cos(t); });
    if (k == "weierstrass") {
        double a = param(s, "alpha", 0.5);
        int terms = param(s, "terms", 12);
        if (!(a > 0 && a <= 1)) throw UsageError("weierstrass alpha must lie in (0, 1]");
        return PeriodicFunction::sample(grid_n(s), [=](double t) { return lacunary(t, a, 1, terms); });
    }
    if (k == "zygmund-series") {
        int terms = param(s, "terms", 12);
        return PeriodicFunction::sample(grid_n(s), [=](double t) { return lacunary(t, 1.0, 1, terms); });
    }
    if (k == "random-band-limited") {
        std::size_t n = grid_n(s, 256);
        auto modes = param<std::size_t>(s, "modes", n / 4);
        if (modes == 0 || modes >= n / 2) throw UsageError("random-band-limited modes must lie in [1, n/2)");
        return random_band_limited(n, modes, param<std::uint64_t>(s, "seed", 1));
    }
    throw UsageError("fixture '" + k + "' is not a periodic function");
}

CircleDiffeo make_diffeo(const json& spec0) {
    json s = resolve_fixture(spec0);
    const std::string k = s["kind"];
    if (k == "sine-diffeo") {
        double a = param(s, "a", 0.5);
        int m = param(s, "k", 1);
        if (!(std::abs(a) < 1) || m < 1) throw UsageError("sine-diffeo needs |a| < 1 and k >= 1");
        return from_log_derivative(
            PeriodicFunction::sample(grid_n(s, 1024), [=](double t) { return std::log(1 + a * std::cos(m * t)); }));
    }
    if (k == "diffeo-from-logderiv") {
        if (!s.contains("of")) throw UsageError("diffeo-from-logderiv needs 'of'");
        PeriodicFunction phi = make_periodic(s["of"]);
        double c = param(s, "scale", 1.0);
        for (auto& v : phi.values) v *= c;
        return from_log_derivative(phi);
    }
    throw UsageError("fixture '" + k + "' is not a diffeomorphism");
}

Coefficient make_coefficient(const json& spec0) {
    json s = resolve_fixture(spec0);
    const std::string k = s["kind"];
    try {
        if (k == "zero") return zero_coefficient();
        if (k == "radial-stretch") return radial_stretch(param(s, "r0", 1.3), param(s, "r1", 2.2), param(s, "amp", 0.4));
        if (k == "annulus-mode")
            return annulus_mode(param(s, "r0", 1.3), param(s, "r1", 2.0), param(s, "amp", 0.3), param(s, "m", 3));
    } catch (const DomainError& e) {
        throw UsageError(std::string("bad coefficient fixture: ") + e.what());
    }
    throw UsageError("fixture '" + k + "' is not a coefficient");
}

PlanarGrid make_grid(const json& spec0) {
    json s = resolve_fixture(spec0);
    if (s["kind"] != "grid") throw UsageError("fixture is not a grid literal");
    GridGeometry geo{param(s, "spacing", 0.0), param<std::size_t>(s, "size", 0)};
    if (!(geo.h > 0) || geo.M == 0) throw UsageError("grid literal needs positive spacing and size");
    if (!s.contains("values") || !s["values"].is_array() || s["values"].size() != geo.size())
        throw UsageError("grid literal needs size^2 values");
    std::vector<cplx> v;
    v.reserve(geo.size());
    for (auto& p : s["values"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw UsageError("grid values are [re, im] pairs");
        v.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    try {
        return grid_from_values(geo, std::move(v));
    } catch (const DomainError& e) {
        throw UsageError(std::string("bad grid literal: ") + e.what());
    }
}

std::string digest(const json& v) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : v.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace zq
