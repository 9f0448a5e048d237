#include "affhom/discover.hpp"

#include "affhom/catalog.hpp"
#include "affhom/expand.hpp"

namespace affhom {

namespace {

Matrix4<RatFunc> lift_matrix(const Matrix4<Rational>& m) {
  Matrix4<RatFunc> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = RatFunc(m[i][j]);
  return out;
}

Json ratfunc_json(const RatFunc& r, const std::string& var) { return r.str(var.empty() ? "b" : var); }

Json jet_json_named(const Jet<RatFunc>& j, const std::string& var) {
  Json terms = Json::array();
  const auto& t = j.poly().terms();
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    Json m = Json::array();
    for (auto e : it->first.exponents()) m.push_back(e);
    terms.push_back(Json{{"m", m}, {"c", ratfunc_json(it->second, var)}});
  }
  return Json{{"order", j.order()}, {"terms", terms}};
}

std::string jet_text(const Jet<RatFunc>& j, const std::string& var) {
  std::string s;
  const auto& t = j.poly().terms();
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    std::string c = it->second.str(var.empty() ? "b" : var);
    std::string m = j.poly().monomial_str(it->first);
    if (!s.empty()) s += " + ";
    s += "(" + c + ")" + (m == "1" ? "" : "*" + m);
  }
  return s.empty() ? "0" : s;
}

Json matrix_json_named(const Matrix4<RatFunc>& m, const std::string& var) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(ratfunc_json(x, var));
    rows.push_back(r);
  }
  return rows;
}

// pivot monomial and rescaling weights for the cases normalized by rescaling
struct Rescaling {
  Monomial pivot;
  std::array<int, 3> weights;
  int ww;
};

std::optional<Rescaling> case_rescaling(CaseId c) {
  if (c == CaseId::NoCubic) return Rescaling{Monomial{0, 0, 4}, {1, 1, 1}, 2};
  if (c == CaseId::I3) return Rescaling{Monomial{4, 0, 0}, {2, 4, 3}, 6};
  return std::nullopt;
}

std::vector<const NormalForm*> candidate_forms(CaseId c) {
  std::vector<const NormalForm*> out;
  for (const auto& nf : catalog().normal_forms)
    if (nf.case_id == c || (c == CaseId::I3 && nf.case_id == CaseId::Inr)) out.push_back(&nf);
  return out;
}

// normal form compared at the jet's order
std::optional<RatFunc> match_at_order(const Jet<RatFunc>& jet, const NormalForm& nf) {
  if (jet.order() < nf.order && nf.case_id != CaseId::Inr) return std::nullopt;
  return match_normal_form(jet, nf);
}

bool has_parameter(const Jet<RatFunc>& j) {
  for (const auto& [m, c] : j.poly().terms())
    if (!c.is_constant()) return true;
  return false;
}

NormalFormMatch make_match(const NormalForm& nf, const Jet<RatFunc>& jet, const RatFunc& b, std::string via) {
  NormalFormMatch m{nf.id, std::nullopt, std::move(via)};
  if (has_parameter(nf.symbolic_jet().truncated(jet.order()))) m.b = b;
  return m;
}

void identify(DiscoveredComponent& comp, CaseId c) {
  if (!comp.completion) return;
  const Jet<RatFunc>& jet = *comp.completion;
  for (const NormalForm* nf : candidate_forms(c)) {
    if (nf->case_id == CaseId::Inr && c == CaseId::I3) continue;  // reached by rescaling only
    if (auto b = match_at_order(jet, *nf)) comp.matches.push_back(make_match(*nf, jet, *b, "direct"));
  }
  auto resc = case_rescaling(c);
  if (!resc || !comp.matches.empty()) return;
  RatFunc pivot = jet.poly().coeff(resc->pivot);
  if (!pivot.is_zero()) {
    if (auto scaled = weighted_rescale(jet, resc->weights, resc->ww, RatFunc(1) / pivot)) {
      for (const NormalForm* nf : candidate_forms(c)) {
        if (auto b = match_at_order(*scaled, *nf)) comp.matches.push_back(make_match(*nf, jet, *b, "rescaling"));
      }
    }
  }
  // special values of the free unknown where the pivot vanishes
  if (comp.family && !pivot.is_zero() && !pivot.is_constant()) {
    for (const auto& root : rational_roots(pivot.num().coeffs())) {
      auto special = specialize(jet, root);
      if (!special) continue;
      Jet<RatFunc> lifted(lift<RatFunc>(special->poly()), special->order());
      for (const NormalForm* nf : candidate_forms(c))
        if (match_at_order(lifted, *nf)) comp.matches.push_back({nf->id, std::nullopt, comp.free + " = " + root.str()});
    }
  }
}

bool structure_ok(const Jet<RatFunc>& j, CaseId c) {
  for (const auto& [m, coeff] : j.poly().terms()) {
    if (c == CaseId::I0 && m[0] != m[1]) return false;
    if (c == CaseId::Inr && m[2] > 0 && !(m[2] == 2 && m[0] == 0 && m[1] == 0)) return false;
  }
  return true;
}

bool same_match(const NormalFormMatch& a, const NormalFormMatch& b) {
  if (a.normal_form != b.normal_form) return false;
  if (a.b.has_value() != b.b.has_value()) return false;
  return !a.b || *a.b == *b.b;
}

}  // namespace

RatFunc compose(const UPoly& p, const RatFunc& t) {
  RatFunc acc(0);
  for (int k = p.degree(); k >= 0; --k) acc = acc * t + RatFunc(p.coeff(k));
  return acc;
}

std::optional<Jet<Rational>> specialize(const Jet<RatFunc>& j, const Rational& value) {
  Poly<Rational> p(j.vars());
  for (const auto& [m, c] : j.poly().terms()) {
    auto v = c.eval(value);
    if (!v) return std::nullopt;
    p.add_term(m, *v);
  }
  return Jet<Rational>(p, j.order());
}

std::optional<Jet<RatFunc>> weighted_rescale(const Jet<RatFunc>& j, const std::array<int, 3>& weights, int ww,
                                             const RatFunc& lambda_squared) {
  Poly<RatFunc> p(j.vars());
  for (const auto& [m, c] : j.poly().terms()) {
    int power = weights[0] * m[0] + weights[1] * m[1] + weights[2] * m[2] - ww;
    if (power % 2 != 0) return std::nullopt;
    RatFunc f(1);
    RatFunc base = power >= 0 ? lambda_squared : RatFunc(1) / lambda_squared;
    for (int k = 0; k < std::abs(power) / 2; ++k) f = f * base;
    p.add_term(m, c * f);
  }
  return Jet<RatFunc>(p, j.order());
}

std::optional<RatFunc> match_normal_form(const Jet<RatFunc>& jet, const NormalForm& nf) {
  Jet<RatFunc> target = nf.symbolic_jet().truncated(jet.order());
  std::map<Monomial, int, GrevlexGreater> mons;
  for (const auto& [m, c] : jet.poly().terms()) mons[m] = 0;
  for (const auto& [m, c] : target.poly().terms()) mons[m] = 0;
  std::vector<std::pair<UPoly, RatFunc>> eqs;  // nf coefficient in b, jet coefficient
  for (const auto& [m, unused] : mons) eqs.emplace_back(target.poly().coeff(m).num(), jet.poly().coeff(m));

  auto check = [&](const RatFunc& b) {
    for (const auto& [p, t] : eqs)
      if (!(compose(p, b) == t)) return false;
    return true;
  };
  if (!has_parameter(target)) {
    if (check(RatFunc(0))) return RatFunc(0);
    return std::nullopt;
  }
  std::vector<RatFunc> candidates;
  for (const auto& [p, t] : eqs)
    if (p.degree() == 1) candidates.push_back((t - RatFunc(p.coeff(0))) / RatFunc(p.coeff(1)));
  for (std::size_t a = 0; a < eqs.size(); ++a)
    for (std::size_t c = 0; c < eqs.size(); ++c) {
      const auto& pa = eqs[a].first;
      const auto& pc = eqs[c].first;
      if (a == c || pa.degree() < 2 || pa.degree() != pc.degree()) continue;
      Rational lam = pa.leading() / pc.leading();
      UPoly q = pa - pc * UPoly(lam);
      if (q.degree() != 1) continue;
      RatFunc t = eqs[a].second - eqs[c].second * RatFunc(lam);
      candidates.push_back((t - RatFunc(q.coeff(0))) / RatFunc(q.coeff(1)));
    }
  for (const auto& b : candidates)
    if (check(b)) return b;
  return std::nullopt;
}

Jet<Rational> case_base_jet(CaseId c) {
  switch (c) {
    case CaseId::NoCubic: return parse_jet("2*x*y + z^2", 3);
    case CaseId::I3: return parse_jet("2*x*y + z^2 + x^3", 3);
    case CaseId::I2: return parse_jet("2*x*y + z^2 + x^2*z", 3);
    case CaseId::I1: return parse_jet("2*x*y + z^2 + x^2*y - 2*x*z^2", 3);
    case CaseId::I0: return parse_jet("2*x*y + z^2 + 3*x*y*z - z^3", 3);
    case CaseId::Inr: return parse_jet("2*x*y + z^2 + x^3 + x^4", 4);
  }
  throw Error("unknown case");
}

int case_target_order(CaseId c) { return c == CaseId::Inr ? 5 : 4; }

Discovery discover(CaseId c) { return discover_from(c, case_base_jet(c), case_target_order(c)); }

Discovery discover_from(CaseId gauge, const Jet<Rational>& base, int target) {
  Discovery d;
  d.case_id = gauge;
  d.base = base;
  d.target = target;
  auto constraints = normalize_PQR_constraints(gauge);
  auto p = solve_tangency(base, Translation<Rational>::axis(0), constraints, "p");
  auto q = solve_tangency(base, Translation<Rational>::axis(1), constraints, "q");
  auto r = solve_tangency(base, Translation<Rational>::axis(2), constraints, "r");
  if (!p || !q || !r) {
    d.tangency_consistent = false;
    return d;
  }
  d.free_unknowns = p->free_names().size() + q->free_names().size() + r->free_names().size();
  ClosureSystem cs = closure_constraints(base, *p, *q, *r);
  d.constraints = cs.equations.size();
  d.solutions = solve_zero_dim(cs.equations);
  Jet<RatFunc> lifted_base(lift<RatFunc>(base.poly()), base.order());

  auto complete = [&](DiscoveredComponent& comp) {
    try {
      comp.completion = complete_series(lifted_base, comp.pqr[0], comp.pqr[1], comp.pqr[2], target);
    } catch (const CompletionError& e) {
      comp.completion_error = e.what();
    }
  };

  for (const auto& pt : d.solutions.points) {
    DiscoveredComponent comp;
    for (const auto& [k, v] : pt) comp.assignments[k] = RatFunc(v);
    auto m = point_pqr(cs, pt);
    for (int k = 0; k < 3; ++k) comp.pqr[k] = lift_matrix(m[k]);
    complete(comp);
    d.components.push_back(std::move(comp));
  }
  for (const auto& fam : d.solutions.families) {
    DiscoveredComponent comp;
    comp.family = true;
    if (fam.free.size() != 1) {
      comp.completion_error = "family with " + std::to_string(fam.free.size()) + " free unknowns is not parametrized";
      d.components.push_back(std::move(comp));
      continue;
    }
    comp.free = fam.free[0];
    std::size_t var = *cs.ring.index_of(comp.free);
    for (const auto& [k, v] : fam.assignments) comp.assignments[k] = to_ratfunc(v, var);
    comp.pqr = family_pqr(cs, fam);
    complete(comp);
    d.components.push_back(std::move(comp));
  }

  for (auto& comp : d.components) {
    identify(comp, gauge);
    if (comp.completion && (gauge == CaseId::I0 || gauge == CaseId::Inr))
      comp.structure = structure_ok(*comp.completion, gauge);
  }
  // duplicates under the residual freedoms
  for (std::size_t j = 0; j < d.components.size(); ++j) {
    auto& cj = d.components[j];
    for (std::size_t i = 0; i < j && !cj.duplicate_of; ++i) {
      const auto& ci = d.components[i];
      if (ci.duplicate_of || !ci.completion || !cj.completion) continue;
      if (gauge == CaseId::I0 && cj.family == ci.family && swap_xy(*cj.completion) == *ci.completion &&
          !(*cj.completion == *ci.completion)) {
        cj.duplicate_of = i;
        cj.duplicate_reason = "x <-> y swap";
      }
      for (const auto& a : ci.matches)
        for (const auto& b : cj.matches)
          if (!cj.duplicate_of && same_match(a, b) && a.via == "direct" && b.via == "direct" && !ci.family && !cj.family) {
            cj.duplicate_of = i;
            cj.duplicate_reason = "same normal form";
          }
    }
  }
  return d;
}

std::vector<const DiscoveredComponent*> Discovery::distinct() const {
  std::vector<const DiscoveredComponent*> out;
  for (const auto& c : components)
    if (!c.duplicate_of) out.push_back(&c);
  return out;
}

Json Discovery::to_json() const {
  Json comps = Json::array();
  for (const auto& c : components) {
    Json j = Json::object();
    j["kind"] = c.family ? "family" : "point";
    if (c.family) j["free"] = c.free;
    Json assign = Json::object();
    for (const auto& [k, v] : c.assignments)
      if (!v.is_zero()) assign[k] = ratfunc_json(v, c.free);
    j["nonzero_assignments"] = assign;
    j["P"] = matrix_json_named(c.pqr[0], c.free);
    j["Q"] = matrix_json_named(c.pqr[1], c.free);
    j["R"] = matrix_json_named(c.pqr[2], c.free);
    if (c.completion) {
      j["completion"] = jet_text(*c.completion, c.free);
      j["completion_jet"] = jet_json_named(*c.completion, c.free);
    } else {
      j["completion_error"] = c.completion_error;
    }
    Json matches = Json::array();
    for (const auto& m : c.matches) {
      Json mj{{"normal_form", m.normal_form}, {"via", m.via}};
      if (m.b) mj["b"] = ratfunc_json(*m.b, c.free);
      matches.push_back(mj);
    }
    j["matches"] = matches;
    if (c.structure) j["structure"] = *c.structure;
    if (c.duplicate_of) {
      j["duplicate_of"] = *c.duplicate_of;
      j["duplicate_reason"] = c.duplicate_reason;
    }
    comps.push_back(j);
  }
  return Json{{"case", to_string(case_id)},
              {"base", base.poly().str()},
              {"target_order", target},
              {"tangency_consistent", tangency_consistent},
              {"free_unknowns", free_unknowns},
              {"constraints", constraints},
              {"solutions", solutions.to_json()},
              {"components", comps}};
}

Report Discovery::report() const {
  Report r;
  r.name = "discover";
  r.data = to_json();
  r.pass = tangency_consistent && solutions.residual.empty() && !components.empty();
  for (const auto* c : distinct())
    if (!c->completion || c->matches.empty() || (c->structure && !*c->structure)) r.pass = false;
  return r;
}

}  // namespace affhom
