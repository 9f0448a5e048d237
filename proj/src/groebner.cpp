#include "affhom/groebner.hpp"

#include "affhom/error.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

namespace affhom {

namespace {

struct Term {
  Monomial m;
  Rational c;
};
using GP = std::vector<Term>;  // descending in the active order

bool greater(const Monomial& a, const Monomial& b, TermOrder o) {
  if (o == TermOrder::Grevlex) return GrevlexGreater{}(a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

GP to_gp(const QPoly& p, TermOrder o) {
  GP g;
  for (const auto& [m, c] : p.terms()) g.push_back({m, c});
  std::sort(g.begin(), g.end(), [o](const Term& a, const Term& b) { return greater(a.m, b.m, o); });
  return g;
}

QPoly from_gp(const GP& g, const VarList& vars) {
  QPoly p(vars);
  for (const auto& t : g) p.add_term(t.m, t.c);
  return p;
}

// f - c * mono * g
GP sub_scaled(const GP& f, const Rational& c, const Monomial& mono, const GP& g, TermOrder o) {
  GP r;
  r.reserve(f.size() + g.size());
  std::size_t i = 0, j = 0;
  while (i < f.size() || j < g.size()) {
    if (j == g.size()) {
      r.push_back(f[i++]);
      continue;
    }
    Monomial gm = g[j].m * mono;
    if (i == f.size() || greater(gm, f[i].m, o)) {
      r.push_back({gm, -(c * g[j].c)});
      ++j;
    } else if (gm == f[i].m) {
      Rational v = f[i].c - c * g[j].c;
      if (!v.is_zero()) r.push_back({gm, v});
      ++i;
      ++j;
    } else {
      r.push_back(f[i++]);
    }
  }
  return r;
}

void make_monic(GP& g) {
  if (g.empty() || g.front().c.is_one()) return;
  Rational inv = g.front().c.inverse();
  for (auto& t : g) t.c = t.c * inv;
}

GP normal_form(GP f, const std::vector<const GP*>& basis, TermOrder o) {
  GP rem;
  while (!f.empty()) {
    const GP* div = nullptr;
    for (const GP* g : basis)
      if (g->front().m.divides(f.front().m)) {
        div = g;
        break;
      }
    if (div) {
      Term lt = f.front();
      f = sub_scaled(f, lt.c / div->front().c, lt.m / div->front().m, *div, o);
    } else {
      rem.push_back(std::move(f.front()));
      f.erase(f.begin());
    }
  }
  return rem;
}

GP spoly(const GP& f, const GP& g, TermOrder o) {
  Monomial l = Monomial::lcm(f.front().m, g.front().m);
  GP zero;
  GP a = sub_scaled(zero, -(f.front().c.inverse()), l / f.front().m, f, o);
  return sub_scaled(a, g.front().c.inverse(), l / g.front().m, g, o);
}

bool disjoint(const Monomial& a, const Monomial& b) { return Monomial::gcd(a, b).is_one(); }

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  int sugar;
};

int total_degree(const GP& g) {
  int d = 0;
  for (const auto& t : g) d = std::max(d, t.m.degree());
  return d;
}

std::vector<GP> groebner_gp(std::vector<GP> inputs, TermOrder o) {
  std::vector<GP> store;
  std::vector<int> sugar;
  std::vector<std::size_t> active;  // current basis, indices into store
  std::vector<Pair> pairs;

  auto lm = [&](std::size_t k) -> const Monomial& { return store[k].front().m; };
  auto make_pair = [&](std::size_t h, std::size_t g) {
    Monomial l = Monomial::lcm(lm(h), lm(g));
    int s = std::max(sugar[h] + l.degree() - lm(h).degree(), sugar[g] + l.degree() - lm(g).degree());
    return Pair{h, g, l, s};
  };

  // Gebauer-Moeller update
  auto update = [&](std::size_t h) {
    std::vector<Pair> c;
    for (std::size_t g : active) c.push_back(make_pair(h, g));
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Pair& p = c[k];
      bool keep = disjoint(lm(h), lm(p.j));
      if (!keep) {
        keep = true;
        for (std::size_t k2 = k + 1; k2 < c.size() && keep; ++k2)
          if (c[k2].lcm.divides(p.lcm)) keep = false;
        for (const auto& q : d)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) d.push_back(p);
    }
    std::vector<Pair> e;
    for (const auto& p : d)
      if (!disjoint(lm(h), lm(p.j))) e.push_back(p);
    std::vector<Pair> bnew;
    for (const auto& p : pairs) {
      bool drop = lm(h).divides(p.lcm) && !(Monomial::lcm(lm(p.i), lm(h)) == p.lcm) &&
                  !(Monomial::lcm(lm(h), lm(p.j)) == p.lcm);
      if (!drop) bnew.push_back(p);
    }
    for (auto& p : e) bnew.push_back(std::move(p));
    pairs = std::move(bnew);
    std::vector<std::size_t> gnew;
    for (std::size_t g : active)
      if (!lm(h).divides(lm(g))) gnew.push_back(g);
    gnew.push_back(h);
    active = std::move(gnew);
  };

  auto active_ptrs = [&] {
    std::vector<const GP*> v;
    for (std::size_t k : active) v.push_back(&store[k]);
    return v;
  };

  for (auto& f : inputs) {
    f = normal_form(std::move(f), active_ptrs(), o);
    if (f.empty()) continue;
    make_monic(f);
    sugar.push_back(total_degree(f));
    store.push_back(std::move(f));
    update(store.size() - 1);
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [o](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      if (!(a.lcm == b.lcm)) return greater(b.lcm, a.lcm, o);
      if (a.i != b.i) return a.i < b.i;
      return a.j < b.j;
    });
    Pair p = *best;
    pairs.erase(best);
    GP h = normal_form(spoly(store[p.i], store[p.j], o), active_ptrs(), o);
    if (h.empty()) continue;
    make_monic(h);
    sugar.push_back(p.sugar);
    store.push_back(std::move(h));
    update(store.size() - 1);
  }

  // inter-reduce the minimal basis
  std::vector<GP> basis;
  for (std::size_t k : active) basis.push_back(store[k]);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::vector<const GP*> others;
    for (std::size_t l = 0; l < basis.size(); ++l)
      if (l != k) others.push_back(&basis[l]);
    GP tail(basis[k].begin() + 1, basis[k].end());
    GP red = normal_form(std::move(tail), others, o);
    red.insert(red.begin(), basis[k].front());
    basis[k] = std::move(red);
  }
  std::sort(basis.begin(), basis.end(), [o](const GP& a, const GP& b) { return greater(a.front().m, b.front().m, o); });
  return basis;
}

}  // namespace

std::vector<QPoly> buchberger(const std::vector<QPoly>& gens, TermOrder order) {
  if (gens.empty()) return {};
  const VarList vars = gens.front().vars();
  std::vector<GP> in;
  for (const auto& g : gens) {
    if (!(g.vars() == vars)) throw VariableMismatch("generators use different variables");
    if (!g.is_zero()) in.push_back(to_gp(g, order));
  }
  std::vector<QPoly> out;
  for (const auto& g : groebner_gp(std::move(in), order)) out.push_back(from_gp(g, vars));
  return out;
}

QPoly reduce(const QPoly& p, const std::vector<QPoly>& basis, TermOrder order) {
  std::vector<GP> b;
  for (const auto& g : basis)
    if (!g.is_zero()) b.push_back(to_gp(g, order));
  std::vector<const GP*> ptrs;
  for (const auto& g : b) ptrs.push_back(&g);
  return from_gp(normal_form(to_gp(p, order), ptrs, order), p.vars());
}

QPoly s_polynomial(const QPoly& f, const QPoly& g, TermOrder order) {
  if (f.is_zero() || g.is_zero()) return QPoly(f.vars());
  return from_gp(spoly(to_gp(f, order), to_gp(g, order), order), f.vars());
}

Monomial leading_monomial(const QPoly& p, TermOrder order) {
  if (p.is_zero()) throw Error("leading monomial of zero");
  return to_gp(p, order).front().m;
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs) {
  std::vector<Rational> c = coeffs;
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  std::vector<Rational> roots;
  if (c.size() <= 1) return roots;
  std::size_t shift = 0;
  while (c[shift].is_zero()) ++shift;
  if (shift) roots.push_back(Rational(0));
  c.erase(c.begin(), c.begin() + static_cast<long>(shift));
  if (c.size() <= 1) return roots;
  mpz_class l = 1;
  for (const auto& x : c) l = lcm(l, x.den());
  std::vector<mpz_class> ints;
  for (const auto& x : c) ints.push_back(x.num() * (l / x.den()));
  auto eval = [&](const Rational& r) {
    Rational acc(0);
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * r + c[k];
    return acc;
  };
  for (const auto& p : divisors(ints.front()))
    for (const auto& q : divisors(ints.back()))
      for (int sign : {1, -1}) {
        Rational r(mpz_class(sign * p), q);
        if (eval(r).is_zero() && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

using Assignment = std::map<std::size_t, QPoly>;

QPoly substitute_var(const QPoly& p, std::size_t v, const QPoly& image) {
  std::vector<QPoly> images;
  for (std::size_t k = 0; k < p.nvars(); ++k) images.push_back(k == v ? image : QPoly::variable(p.vars(), k));
  return p.compose(images);
}

// g = c*v + h with h free of v and c constant: returns h / -c
std::optional<QPoly> linear_eliminator(const QPoly& g, std::size_t v) {
  Monomial unit = Monomial::unit(g.nvars(), v);
  Rational c = g.coeff(unit);
  if (c.is_zero()) return std::nullopt;
  QPoly rest(g.vars());
  for (const auto& [m, k] : g.terms()) {
    if (m == unit) continue;
    if (m[v] != 0) return std::nullopt;
    rest.add_term(m, k);
  }
  return rest.scaled(-(c.inverse()));
}

// the single variable of a non-constant univariate polynomial
std::optional<std::size_t> univariate_var(const QPoly& g) {
  std::optional<std::size_t> var;
  for (const auto& [m, c] : g.terms())
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k]) {
        if (var && *var != k) return std::nullopt;
        var = k;
      }
  return var;
}

std::optional<std::size_t> common_var(const QPoly& g) {
  if (g.degree() < 2) return std::nullopt;
  Monomial gcd = g.terms().begin()->first;
  for (const auto& [m, c] : g.terms()) gcd = Monomial::gcd(gcd, m);
  for (std::size_t k = 0; k < gcd.size(); ++k)
    if (gcd[k]) return k;
  return std::nullopt;
}

// rational rho with g(v = rho) identically zero, i.e. a factor v - rho
std::optional<Rational> single_var_root(const QPoly& g, std::size_t v) {
  // group coefficients by the monomial in the other variables
  std::map<Monomial, std::map<int, Rational>, GrevlexGreater> groups;
  for (const auto& [m, c] : g.terms()) {
    if (m[v] == 0 && g.terms().size() == 1) return std::nullopt;
    Monomial rest = m;
    rest[v] = 0;
    groups[rest][m[v]] = c;
  }
  if (groups.size() < 2) return std::nullopt;  // univariate in v, handled elsewhere
  for (const auto& [rest, coeffs] : groups) {
    int deg = coeffs.rbegin()->first;
    if (deg == 0) return std::nullopt;
    std::vector<Rational> uni(static_cast<std::size_t>(deg) + 1, Rational(0));
    for (const auto& [k, c] : coeffs) uni[static_cast<std::size_t>(k)] = c;
    for (const auto& rho : rational_roots(uni)) {
      QPoly at = substitute_var(g, v, QPoly::constant(g.vars(), rho));
      if (at.is_zero()) return rho;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

// g / (v - rho), exact by the caller's guarantee
QPoly divide_linear(const QPoly& g, std::size_t v, const Rational& rho) {
  const VarList& vars = g.vars();
  QPoly shifted = substitute_var(g, v, QPoly::variable(vars, v) + QPoly::constant(vars, rho));
  QPoly q(vars);
  for (const auto& [m, c] : shifted.terms()) q.add_term(m / Monomial::unit(vars.size(), v), c);
  return substitute_var(q, v, QPoly::variable(vars, v) - QPoly::constant(vars, rho));
}

bool has_constant(const std::vector<QPoly>& basis) {
  for (const auto& g : basis)
    if (g.degree() == 0) return true;
  return false;
}

struct Solver {
  VarList ring;
  SolutionSet& out;

  void emit(const Assignment& solved) {
    std::vector<std::string> free;
    for (std::size_t k = 0; k < ring.size(); ++k)
      if (!solved.count(k)) free.push_back(ring[k]);
    if (free.empty()) {
      std::map<std::string, Rational> pt;
      for (const auto& [k, e] : solved) pt[ring[k]] = e.coeff(Monomial(ring.size()));
      if (std::find(out.points.begin(), out.points.end(), pt) == out.points.end()) out.points.push_back(pt);
      return;
    }
    SolutionFamilyQ fam;
    fam.free = free;
    for (std::size_t k = 0; k < ring.size(); ++k)
      fam.assignments.emplace(ring[k], solved.count(k) ? solved.at(k) : QPoly::variable(ring, k));
    for (const auto& f : out.families)
      if (f.free == fam.free && f.assignments == fam.assignments) return;
    out.families.push_back(std::move(fam));
  }

  void residual(const std::vector<QPoly>& basis, const Assignment& solved) {
    ResidualComponent r;
    r.basis = basis;
    for (const auto& [k, e] : solved) r.partial.emplace(ring[k], e);
    out.residual.push_back(std::move(r));
  }

  void eliminate(const std::vector<QPoly>& gens, Assignment solved, std::size_t v, const QPoly& image) {
    std::vector<QPoly> next;
    for (const auto& g : gens) {
      QPoly s = substitute_var(g, v, image);
      if (!s.is_zero()) next.push_back(std::move(s));
    }
    for (auto& [k, e] : solved) e = substitute_var(e, v, image);
    solved.emplace(v, image);
    run(next, std::move(solved));
  }

  bool split_on(const std::vector<QPoly>& basis, const std::vector<QPoly>& gens, const Assignment& solved) {
    // linear eliminators, lexically greatest unknown first
    for (std::size_t v = ring.size(); v-- > 0;)
      for (const auto& g : basis)
        if (auto image = linear_eliminator(g, v)) {
          eliminate(gens, solved, v, *image);
          return true;
        }
    // univariate elements
    for (const auto& g : basis) {
      auto v = univariate_var(g);
      if (!v || g.degree() < 2) continue;
      std::vector<Rational> coeffs(static_cast<std::size_t>(g.degree()) + 1, Rational(0));
      for (const auto& [m, c] : g.terms()) coeffs[m[*v]] = c;
      auto roots = rational_roots(coeffs);
      for (const auto& r : roots) eliminate(gens, solved, *v, QPoly::constant(ring, r));
      // remove the rational linear factors and report what is left
      QPoly rest = g;
      for (const auto& r : roots) {
        QPoly lin = QPoly::variable(ring, *v) - QPoly::constant(ring, r);
        for (;;) {
          auto q = divide_univariate(rest, lin, *v);
          if (!q) break;
          rest = *q;
        }
      }
      if (rest.degree() > 0) {
        std::vector<QPoly> comp = basis;
        comp.push_back(rest);
        residual(buchberger(comp), solved);
      }
      return true;
    }
    // factors v - rho, rho = 0 (monomial factors) first
    for (const auto& g : basis)
      if (auto v = common_var(g)) {
        branch(gens, solved, g, *v, Rational(0));
        return true;
      }
    for (const auto& g : basis)
      for (std::size_t v = ring.size(); v-- > 0;)
        if (auto rho = single_var_root(g, v)) {
          branch(gens, solved, g, v, *rho);
          return true;
        }
    return false;
  }

  void branch(const std::vector<QPoly>& gens, const Assignment& solved, const QPoly& g, std::size_t v,
              const Rational& rho) {
    eliminate(gens, solved, v, QPoly::constant(ring, rho));
    std::vector<QPoly> b = gens;
    b.push_back(divide_linear(g, v, rho));
    run(b, solved);
  }

  // exact division of univariate polynomials in variable v
  static std::optional<QPoly> divide_univariate(const QPoly& a, const QPoly& b, std::size_t v) {
    std::vector<QPoly> basis{b};
    QPoly r = reduce(a, basis);
    if (!r.is_zero()) return std::nullopt;
    QPoly q(a.vars()), rem = a;
    Monomial lb = b.leading().first;
    while (!rem.is_zero()) {
      auto [m, c] = rem.leading();
      QPoly t = QPoly::term(a.vars(), m / lb, c / b.leading().second);
      q += t;
      rem -= t * b;
    }
    (void)v;
    return q;
  }

  void run(const std::vector<QPoly>& gens, Assignment solved) {
    std::vector<QPoly> basis = gens.empty() ? std::vector<QPoly>{} : buchberger(gens);
    if (has_constant(basis)) return;
    if (basis.empty()) {
      emit(solved);
      return;
    }
    if (split_on(basis, basis, solved)) return;
    std::vector<QPoly> lex = buchberger(basis, TermOrder::Lex);
    if (split_on(lex, basis, solved)) return;
    residual(basis, solved);
  }
};

bool satisfies(const std::vector<QPoly>& gens, const std::map<std::string, QPoly>& assignment, const VarList& ring,
               const VarList& target) {
  std::vector<QPoly> images;
  for (std::size_t k = 0; k < ring.size(); ++k) images.push_back(assignment.at(ring[k]));
  for (const auto& g : gens)
    if (!g.compose(images).is_zero()) return false;
  (void)target;
  return true;
}

}  // namespace

namespace {

// images of the ring variables under a family, with its free unknowns replaced
std::map<std::string, QPoly> specialize(const SolutionFamilyQ& f, const VarList& ring,
                                        const std::map<std::string, QPoly>& free_values) {
  std::vector<QPoly> images;
  for (std::size_t k = 0; k < ring.size(); ++k) {
    auto it = free_values.find(ring[k]);
    images.push_back(it != free_values.end() ? it->second : QPoly::variable(ring, k));
  }
  std::map<std::string, QPoly> out;
  for (const auto& [name, e] : f.assignments) out.emplace(name, e.compose(images));
  return out;
}

// true when every member of `inner` (given as assignments) lies on `outer`
bool contained(const std::map<std::string, QPoly>& inner, const SolutionFamilyQ& outer, const VarList& ring) {
  std::map<std::string, QPoly> fv;
  for (const auto& n : outer.free) fv.emplace(n, inner.at(n));
  return specialize(outer, ring, fv) == inner;
}

}  // namespace

SolutionSet solve_zero_dim(const std::vector<QPoly>& gens) {
  SolutionSet out;
  if (gens.empty()) return out;
  out.ring = gens.front().vars();
  Solver solver{out.ring, out};
  solver.run(gens, {});
  // drop points and families lying on a larger family
  auto& fams = out.families;
  std::stable_sort(fams.begin(), fams.end(),
                   [](const SolutionFamilyQ& a, const SolutionFamilyQ& b) { return a.free.size() > b.free.size(); });
  std::vector<SolutionFamilyQ> kept;
  for (const auto& f : fams) {
    bool inside = false;
    for (const auto& g : kept) inside = inside || contained(f.assignments, g, out.ring);
    if (!inside) kept.push_back(f);
  }
  fams = std::move(kept);
  std::vector<std::map<std::string, Rational>> pts;
  for (const auto& pt : out.points) {
    std::map<std::string, QPoly> a;
    for (const auto& [k, v] : pt) a.emplace(k, QPoly::constant(out.ring, v));
    bool inside = false;
    for (const auto& g : fams) inside = inside || contained(a, g, out.ring);
    if (!inside) pts.push_back(pt);
  }
  out.points = std::move(pts);
  std::sort(out.points.begin(), out.points.end());
  for (const auto& pt : out.points) {
    std::map<std::string, QPoly> a;
    for (const auto& [k, v] : pt) a.emplace(k, QPoly::constant(out.ring, v));
    if (!satisfies(gens, a, out.ring, out.ring)) throw Error("internal: solution point fails a generator");
  }
  for (const auto& f : out.families)
    if (!satisfies(gens, f.assignments, out.ring, out.ring)) throw Error("internal: solution family fails a generator");
  return out;
}

Json SolutionSet::to_json() const {
  Json j;
  j["points"] = Json::array();
  for (const auto& pt : points) {
    Json o = Json::object();
    for (const auto& [k, v] : pt) o[k] = v.str();
    j["points"].push_back(o);
  }
  j["families"] = Json::array();
  for (const auto& f : families) {
    Json o;
    if (f.free.size() == 1)
      o["free"] = f.free.front();
    else
      o["free"] = f.free;
    Json a = Json::object();
    for (const auto& [k, v] : f.assignments) a[k] = v.str();
    o["assignments"] = a;
    j["families"].push_back(o);
  }
  j["residual"] = Json::array();
  for (const auto& r : residual) {
    Json o;
    o["basis"] = Json::array();
    for (const auto& g : r.basis) o["basis"].push_back(g.str());
    Json s = Json::object();
    for (const auto& [k, v] : r.partial) s[k] = v.str();
    o["solved"] = s;
    j["residual"].push_back(o);
  }
  return j;
}

}  // namespace affhom
