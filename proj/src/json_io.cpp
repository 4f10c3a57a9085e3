#include "nsvoa/json_io.hpp"

#include <stdexcept>

namespace nsvoa {

Json to_json(const Rational& r) { return r.str(); }

Json to_json(Half h) { return h.str(); }

Json to_json(const Scalar& s) {
    Json coords = Json::array();
    for (const auto& c : s.coords()) coords.push_back(c.str());
    return Json{{"value", s.str()}, {"coords", coords}, {"m", s.m()}};
}

Scalar scalar_from_json(const Json& j) {
    std::array<Rational, Scalar::kDim> coords;
    const Json& c = j.at("coords");
    if (c.size() != Scalar::kDim) throw std::invalid_argument("scalar: expected 8 coordinates");
    for (std::size_t k = 0; k < coords.size(); ++k) coords[k] = Rational::parse(c[k].get<std::string>());
    Scalar s = Scalar::normalize(coords, j.at("m").get<int>());
    if (j.contains("value") && j.at("value").get<std::string>() != s.str())
        throw std::invalid_argument("scalar: text and coordinates disagree");
    return s;
}

Json to_json(const IdentityReport& r) {
    return Json{{"checked", r.checked}, {"failure_count", r.failure_count}, {"failures", r.failures}};
}

Json to_json(const MinimalLabel& l) {
    return Json{{"m", l.m}, {"j", to_json(l.j)}, {"k", to_json(l.k)}, {"c", to_json(l.c())},
                {"h", to_json(l.h())}, {"q", to_json(l.q())}};
}

Json to_json(const CharacterSeries& ch) {
    Json terms = Json::array();
    for (const auto& [key, d] : ch.dims)
        terms.push_back(Json{{"level", to_json(key.first)}, {"charge", key.second}, {"dim", d}});
    return Json{{"weight_offset", to_json(ch.weight_offset)},
                {"charge_offset", to_json(ch.charge_offset)},
                {"truncation", to_json(ch.truncation)},
                {"terms", terms}};
}

Json to_json(const StateVector& v) {
    Json terms = Json::array();
    for (const auto& [mono, c] : v) terms.push_back(Json{{"monomial", monomial_str(mono)}, {"coefficient", to_json(c)}});
    return terms;
}

}  // namespace nsvoa
