#include "affhom/serialize.hpp"

namespace affhom {

Jet<Rational> jet_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("terms"))
    throw Error("jet JSON needs \"order\" and \"terms\"");
  int order = j.at("order").get<int>();
  Poly<Rational> p(VarList::xyz());
  for (const auto& t : j.at("terms")) {
    const auto& m = t.at("m");
    if (!m.is_array() || m.size() != 3) throw Error("jet term exponent must have three entries");
    Monomial mon{m[0].get<int>(), m[1].get<int>(), m[2].get<int>()};
    const auto& c = t.at("c");
    Rational coeff = c.is_string() ? Rational::parse(c.get<std::string>()) : Rational(c.get<long>());
    p.add_term(mon, coeff);
  }
  return Jet<Rational>(p, order);
}

}  // namespace affhom
