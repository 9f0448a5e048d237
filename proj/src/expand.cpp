#include "affhom/expand.hpp"

#include "affhom/error.hpp"
#include <cctype>

namespace affhom {

namespace {

/// c^e for rational e when the result is rational.
Rational rational_power(const Rational& c, const Rational& e) {
  if (e.is_integer()) {
    if (c.is_zero() && e.sign() < 0) throw DomainError("negative power of zero");
    return c.pow(e.num().get_si());
  }
  if (c.sign() <= 0) throw DomainError("non-integer power needs a positive base, got " + c.str());
  auto r = c.root(e.den().get_ui());
  if (!r) throw DomainError("power " + c.str() + "^(" + e.str() + ") is not rational");
  return r->pow(e.num().get_si());
}

}  // namespace

std::vector<Rational> taylor_coefficients(Primitive fn, const Rational& center, int order,
                                          const Rational& exponent) {
  std::vector<Rational> c;
  switch (fn) {
    case Primitive::Exp: {
      if (!center.is_zero()) throw DomainError("exp is only expanded at center 0 (exp(c) is transcendental)");
      Rational f(1);
      for (int n = 0; n <= order; ++n) {
        if (n > 0) f = f / Rational(n);
        c.push_back(f);
      }
      break;
    }
    case Primitive::Log: {
      if (center.sign() <= 0) throw DomainError("log needs a positive center, got " + center.str());
      if (!center.is_one()) throw DomainError("log is only expanded at center 1 (log(c) is transcendental)");
      c.push_back(Rational(0));
      for (int n = 1; n <= order; ++n) c.push_back(Rational(n % 2 ? 1 : -1, n));
      break;
    }
    case Primitive::Pow: {
      if (exponent.is_integer() && exponent.sign() >= 0 && center.is_zero()) {
        long e = exponent.num().get_si();
        for (int n = 0; n <= order; ++n) c.push_back(Rational(n == e ? 1 : 0));
        break;
      }
      // c^a * binom(a, n) * c^-n
      Rational base = rational_power(center, exponent);
      Rational binom(1);
      Rational inv_c = center.inverse();
      Rational scale(1);
      for (int n = 0; n <= order; ++n) {
        if (n > 0) {
          binom = binom * (exponent - Rational(n - 1)) / Rational(n);
          scale = scale * inv_c;
        }
        c.push_back(base * binom * scale);
      }
      break;
    }
  }
  return c;
}

Jet<Rational> taylor_primitive(Primitive fn, const Rational& center, int order, const Rational& exponent) {
  static const VarList u{"u"};
  auto c = taylor_coefficients(fn, center, order, exponent);
  Poly<Rational> p(u);
  for (int n = 0; n <= order; ++n) p.add_term(Monomial{n}, c[n]);
  return Jet<Rational>(p, order);
}

Jet<Rational> apply_primitive(Primitive fn, const Jet<Rational>& j, const Rational& exponent) {
  Rational c0 = j.constant_term();
  if (fn == Primitive::Pow && exponent.is_integer()) {
    long e = exponent.num().get_si();
    if (e >= 0) return j.pow(static_cast<unsigned>(e));
    return j.inverse().pow(static_cast<unsigned>(-e));
  }
  auto coeffs = taylor_coefficients(fn, c0, j.order(), exponent);
  Jet<Rational> u = j + (-c0);
  return Jet<Rational>::compose_univariate(u, coeffs);
}

Jet<Rational> evaluate(const ExprPtr& e, const std::array<Jet<Rational>, 4>& env) {
  using K = Expr::Kind;
  const auto& ref = env[0];
  switch (e->kind) {
    case K::Var:
      return env[static_cast<int>(e->var)];
    case K::Const:
      return Jet<Rational>::constant(ref.vars(), e->value, ref.order());
    case K::Add:
      return evaluate(e->a, env) + evaluate(e->b, env);
    case K::Sub:
      return evaluate(e->a, env) - evaluate(e->b, env);
    case K::Mul:
      return evaluate(e->a, env) * evaluate(e->b, env);
    case K::Neg:
      return -evaluate(e->a, env);
    case K::Pow:
      return apply_primitive(Primitive::Pow, evaluate(e->a, env), e->value);
    case K::Exp:
      return apply_primitive(Primitive::Exp, evaluate(e->a, env));
    case K::Log:
      return apply_primitive(Primitive::Log, evaluate(e->a, env));
  }
  throw Error("unknown expression node");
}

Rational evaluate_at_point(const ExprPtr& e, const std::array<Rational, 4>& point) {
  static const VarList none{};
  std::array<Jet<Rational>, 4> env;
  for (int i = 0; i < 4; ++i) env[i] = Jet<Rational>::constant(none, point[i], 0);
  return evaluate(e, env).constant_term();
}

Jet<Rational> local_jet(const SurfaceSpec& spec, int order) {
  // local variable order is (x, y, z, w); spec variables are (W, X, Y, Z)
  const VarList& v = VarList::xyzw();
  std::array<Jet<Rational>, 4> env;
  env[0] = Jet<Rational>::variable(v, 3, order) + spec.basepoint[0];
  for (int i = 1; i < 4; ++i) env[i] = Jet<Rational>::variable(v, i - 1, order) + spec.basepoint[i];
  return evaluate(spec.defining_function(), env);
}

namespace {

std::array<Jet<Rational>, 4> graph_env(const SurfaceSpec& spec, const Jet<Rational>& w) {
  const VarList& v = VarList::xyz();
  int n = w.order();
  std::array<Jet<Rational>, 4> env;
  env[0] = w + spec.basepoint[0];
  for (int i = 1; i < 4; ++i) env[i] = Jet<Rational>::variable(v, i - 1, n) + spec.basepoint[i];
  return env;
}

}  // namespace

Jet<Rational> graph_residual(const SurfaceSpec& spec, const Jet<Rational>& graph) {
  return evaluate(spec.defining_function(), graph_env(spec, graph));
}

std::vector<Jet<Rational>> newton_iterates(const SurfaceSpec& spec, int order, int steps) {
  ExprPtr g = spec.defining_function();
  ExprPtr dg = derivative(g, Var::W);
  Jet<Rational> w = Jet<Rational>::zero(VarList::xyz(), order);
  std::vector<Jet<Rational>> out{w};
  for (int k = 0; k < steps; ++k) {
    auto env = graph_env(spec, w);
    Jet<Rational> gv = evaluate(g, env);
    if (gv.is_zero()) {
      out.push_back(w);
      continue;
    }
    Jet<Rational> dv = evaluate(dg, env);
    if (dv.constant_term().is_zero())
      throw DomainError("equation is not solvable for W at the basepoint (dG/dW = 0)");
    w = w - gv * dv.inverse();
    out.push_back(w);
  }
  return out;
}

Jet<Rational> expand_graph(const SurfaceSpec& spec, int order) {
  if (order < 0) throw Error("negative expansion order");
  ExprPtr dg = derivative(spec.defining_function(), Var::W);
  Rational d0 = evaluate_at_point(dg, spec.basepoint);
  if (d0.is_zero()) throw DomainError("equation is not solvable for W at the basepoint (dG/dW = 0)");
  int steps = 1;
  while ((1 << steps) <= order) ++steps;
  Jet<Rational> w = newton_iterates(spec, order, steps).back();
  if (!graph_residual(spec, w).is_zero()) throw Error("Newton iteration did not converge");
  return w;
}

}  // namespace affhom

namespace affhom {

namespace {

// lower-case graph variables (and the parameter b) to surface letters
std::string graph_text(std::string_view text, bool with_param) {
  std::string upper(text);
  auto is_letter = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; };
  for (std::size_t i = 0; i < upper.size(); ++i) {
    char c = upper[i];
    bool left = i > 0 && is_letter(upper[i - 1]);
    bool right = i + 1 < upper.size() && is_letter(upper[i + 1]);
    if (left || right) continue;
    if (c == 'x' || c == 'y' || c == 'z') upper[i] = static_cast<char>(std::toupper(c));
    if (with_param && c == 'b') upper[i] = 'W';
  }
  return upper;
}

}  // namespace

Jet<Rational> parse_jet(std::string_view text, int order) {
  ExprPtr e = parse_expr(graph_text(text, false));
  const VarList& vars = VarList::xyz();
  std::array<Jet<Rational>, 4> env{Jet<Rational>::zero(vars, order), Jet<Rational>::variable(vars, 0, order),
                                   Jet<Rational>::variable(vars, 1, order), Jet<Rational>::variable(vars, 2, order)};
  return evaluate(e, env);
}

Jet<RatFunc> parse_param_jet(std::string_view text, int order) {
  ExprPtr e = parse_expr(graph_text(text, true));
  const VarList& vars = VarList::xyzw();
  const int inner = order + 8;
  std::array<Jet<Rational>, 4> env{Jet<Rational>::variable(vars, 3, inner), Jet<Rational>::variable(vars, 0, inner),
                                   Jet<Rational>::variable(vars, 1, inner), Jet<Rational>::variable(vars, 2, inner)};
  Jet<Rational> j = evaluate(e, env);
  std::map<Monomial, std::vector<Rational>, GrevlexGreater> coeffs;
  for (const auto& [m, c] : j.poly().terms()) {
    if (m[0] + m[1] + m[2] > order) continue;
    Monomial key{int(m[0]), int(m[1]), int(m[2])};
    auto& v = coeffs[key];
    if (v.size() <= m[3]) v.resize(m[3] + 1, Rational(0));
    v[m[3]] += c;
  }
  Poly<RatFunc> p(VarList::xyz());
  for (auto& [m, v] : coeffs) p.add_term(m, RatFunc(UPoly(v), UPoly(Rational(1))));
  return Jet<RatFunc>(p, order);
}

}  // namespace affhom
