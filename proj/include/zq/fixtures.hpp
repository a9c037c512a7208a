#pragma once

#include "zq/beltrami.hpp"
#include "zq/diffeo.hpp"
#include "zq/planar.hpp"
#include "zq/spectral.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace zq {

using json = nlohmann::json;

// A fixture is a JSON object {"kind": ..., parameters}. Catalog names may be
// used wherever a spec is expected.
//
// periodic:    cosine {n}, weierstrass {alpha, terms, n}, zygmund-series {terms, n},
//              random-band-limited {n, modes, seed}
// diffeo:      sine-diffeo {a, k, n}, diffeo-from-logderiv {of, scale}
// coefficient: zero, radial-stretch {r0, r1, amp}, annulus-mode {r0, r1, amp, m}
// grid:        grid {spacing, size, values: [[re, im], ...]}
enum class FixtureClass { periodic, diffeo, coefficient, grid };

struct FixtureInfo {
    std::string name;
    FixtureClass cls;
    json spec;
    std::string description;
};

const std::vector<FixtureInfo>& list_fixtures();
std::string class_name(FixtureClass c);

// Catalog lookup for strings, kind check for objects. Unknown names and kinds
// throw UsageError.
json resolve_fixture(const json& spec);
FixtureClass fixture_class(const json& spec);

PeriodicFunction make_periodic(const json& spec);
CircleDiffeo make_diffeo(const json& spec);
Coefficient make_coefficient(const json& spec);
PlanarGrid make_grid(const json& spec);

// FNV-1a over the canonical dump of a JSON value
std::string digest(const json& v);

} // namespace zq
