#pragma once

#include <json.hpp>

#include "nsvoa/character.hpp"
#include "nsvoa/minimal.hpp"
#include "nsvoa/report.hpp"

namespace nsvoa {

/// Insertion-ordered JSON keeps emitted bytes stable and readable.
using Json = nlohmann::ordered_json;

/// Exact values serialize as strings: rationals as "p/q", half-integers as "n/2".
Json to_json(const Rational& r);
Json to_json(Half h);
/// {"value": text, "coords": eight rationals on {1, i, sqrt2, i sqrt2, r, ir, sqrt2 r, i sqrt2 r}, "m": level}.
Json to_json(const Scalar& s);
Json to_json(const IdentityReport& r);
Json to_json(const MinimalLabel& l);
Json to_json(const CharacterSeries& ch);
Json to_json(const StateVector& v);

/// Inverse of to_json(Scalar); checks that the text and coordinates agree.
Scalar scalar_from_json(const Json& j);

}  // namespace nsvoa
