#include "doctest.h"
#include "zq/error.hpp"
#include "zq/harness.hpp"

#include <algorithm>
#include <cmath>

using namespace zq;

TEST_CASE("fixture catalog") {
    auto& cat = list_fixtures();
    auto has = [&](const char* n) {
        return std::any_of(cat.begin(), cat.end(), [&](auto& f) { return f.name == n; });
    };
    CHECK(has("zygmund-series"));
    CHECK(has("radial-stretch"));
    for (auto& f : cat) CHECK(fixture_class(resolve_fixture(f.name)) == f.cls);
    CHECK_THROWS_AS(resolve_fixture("no-such-fixture"), UsageError);
    CHECK_THROWS_AS(resolve_fixture(json{{"kind", "banana"}}), UsageError);
    CHECK_THROWS_AS(make_periodic("radial-stretch"), UsageError);

    auto z = make_periodic(json{{"kind", "zygmund-series"}, {"terms", 3}, {"n", 64}});
    double t = z.theta(5);
    CHECK(z.values[5].real() == doctest::Approx(0.5 * std::cos(2 * t) + 0.25 * std::cos(4 * t) + 0.125 * std::cos(8 * t)));
    auto a = make_periodic("random-band-limited"), b = make_periodic("random-band-limited");
    CHECK(a.values == b.values);
    auto c = make_periodic(json{{"kind", "random-band-limited"}, {"n", 256}, {"modes", 64}, {"seed", 2}});
    CHECK(a.values != c.values);
    CHECK_THROWS_AS(make_periodic(json{{"kind", "cosine"}, {"n", 100}}), UsageError);
}

TEST_CASE("grid literal") {
    json g{{"kind", "grid"}, {"spacing", 0.5}, {"size", 2}, {"values", {{0, 0}, {0.1, 0}, {0, 0}, {0, 0.2}}}};
    PlanarGrid p = make_grid(g);
    CHECK(p.geo.M == 2);
    CHECK(p.values[3] == cplx(0, 0.2));
    g["values"].erase(0);
    CHECK_THROWS_AS(make_grid(g), UsageError);
}

TEST_CASE("digest and report invariants") {
    CHECK(digest(json{{"a", 1}}) == digest(json{{"a", 1}}));
    CHECK(digest(json{{"a", 1}}) != digest(json{{"a", 2}}));
    CHECK(digest(json::object()).size() == 16);
    // FNV-1a of "{}"
    CHECK(digest(json::object()) == "9bf65e00c699fdaf");
    auto r = one_sided("x", 1.0, 1.0);
    CHECK(r.passed);
    CHECK(!one_sided("x", 1.0 + 1e-15, 1.0).passed);
    auto t = two_sided("y", 1.01, 1.0, 0.02, true);
    CHECK(t.passed);
    CHECK(t.residual == doctest::Approx(0.01));
    CHECK(!two_sided("y", 1.03, 1.0, 0.02, true).passed);
}

TEST_CASE("config parsing") {
    HarnessConfig c = HarnessConfig::from_json(json{{"spacing", 0.0625}, {"seed", 7}});
    CHECK(c.spacing == 0.0625);
    CHECK(c.seed == 7);
    CHECK(c.effective_lambda() == 0.9);
    CHECK_THROWS_AS(HarnessConfig::from_json(json{{"bogus", 1}}), UsageError);
    CHECK_THROWS_AS(HarnessConfig::from_json(json{{"n", 100}}), UsageError);
    CHECK_THROWS_AS(HarnessConfig::from_json(json{{"lambda", 0.1}}), UsageError);
    CHECK_THROWS_AS(HarnessConfig::from_json(json{{"spacing", "fine"}}), UsageError);
    CHECK_THROWS_AS(HarnessConfig::from_json(json{{"fixtures", {"cosine"}}}), UsageError);
    CHECK_THROWS_AS(load_config("/nonexistent/zq.json"), UsageError);
    CHECK(HarnessConfig::from_json(c.to_json()).to_json() == c.to_json());
}

TEST_CASE("spectral suite is deterministic") {
    HarnessConfig c;
    auto a = run_suite("spectral-identities", c);
    REQUIRE(a.size() == 4);
    for (auto& r : a) CHECK(r.passed);
    CHECK(std::is_sorted(a.begin(), a.end(), [](auto& x, auto& y) { return x.check < y.check; }));
    auto b = run_suite("spectral-identities", c);
    CHECK(reports_to_json("s", a).dump() == reports_to_json("s", b).dump());
    c.seed = 2;
    auto d = run_suite("spectral-identities", c);
    CHECK(d[0].inputs_digest != a[0].inputs_digest);
    CHECK_THROWS_AS(run_suite("no-such-suite", c), UsageError);
}

TEST_CASE("recurrence suite") {
    auto r = run_suite("recurrence", HarnessConfig{});
    CHECK(r.size() == 8);
    for (auto& v : r) {
        CHECK(v.error.empty());
        if (v.check.rfind("recurrence-divergence", 0) != 0) CHECK(v.passed);
    }
}

TEST_CASE("failing checks do not stop the suite") {
    HarnessConfig c;
    c.max_iterations = 1;  // every solve throws
    auto r = run_suite("alpha-bound", c);
    REQUIRE(r.size() == 2);
    for (auto& v : r) {
        CHECK(!v.passed);
        CHECK(!v.error.empty());
    }
    auto sp = run_suite("spectral-identities", c);
    CHECK(all_passed(sp));
}

TEST_CASE("explain") {
    std::string w = explain("welding-log-identity");
    CHECK(w.find("log F'(z) = log G'(h(z)) + log h'(z)") != std::string::npos);
    CHECK(explain("alpha-bound/radial-stretch").find("alpha-bound") == 0);
    CHECK_THROWS_AS(explain("no-such-check"), UsageError);
    for (auto& id : check_ids()) CHECK(!explain(id).empty());
}
