#pragma once

#include "affhom/jet.hpp"

#include <json.hpp>

#include <string>

namespace affhom {

using Json = nlohmann::ordered_json;

inline Json scalar_json(const Rational& r) { return r.str(); }
inline Json scalar_json(const RatFunc& r) { return r.str(); }
inline Json scalar_json(const QuadExt& q) {
  if (q.tower().depth() == 0) return q.rational_part().str();
  Json coords = Json::array();
  for (const auto& c : q.coords()) coords.push_back(c.str());
  return Json{{"basis", q.tower().basis_names()}, {"coords", coords}};
}

/// Jet as {"order": N, "terms": [{"m": [i,j,k], "c": "p/q"}, ...]} with terms in
/// ascending grevlex order.
template <Scalar S>
Json jet_json(const Jet<S>& j) {
  Json terms = Json::array();
  const auto& t = j.poly().terms();
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    Json m = Json::array();
    for (auto e : it->first.exponents()) m.push_back(e);
    terms.push_back(Json{{"m", m}, {"c", scalar_json(it->second)}});
  }
  return Json{{"order", j.order()}, {"terms", terms}};
}

/// Inverse of jet_json for rational jets in x, y, z.
Jet<Rational> jet_from_json(const Json& j);

template <Scalar S>
Json poly_strings(const std::vector<Poly<S>>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(p.str());
  return a;
}

}  // namespace affhom
