#include "affhom/expand.hpp"

#include <doctest.h>

using namespace affhom;

namespace {

// generalized binomial coefficient C(a, k)
Rational binom(const Rational& a, int k) {
  Rational c(1);
  for (int i = 0; i < k; ++i) c = c * (a - Rational(i)) / Rational(i + 1);
  return c;
}

Rational factorial(int k) {
  Rational f(1);
  for (int i = 2; i <= k; ++i) f *= Rational(i);
  return f;
}

}  // namespace

TEST_CASE("parser builds trees and reports offsets") {
  auto e = parse_expr("X*Y + Z^2 - 3/4*W");
  CHECK(to_string(e).find("X") != std::string::npos);
  CHECK(evaluate_at_point(e, {Rational(4), Rational(1), Rational(2), Rational(3)}) == Rational(2 + 9 - 3));
  try {
    parse_expr("X*Y + )");
    FAIL("expected a parse error");
  } catch (const ParseError& p) {
    CHECK(p.offset() == 6);
  }
  CHECK_THROWS_AS(parse_expr("Z^alpha"), ParseError);
  Bindings b;
  b.alpha = Rational(12, 5);
  auto z = parse_expr("Z^alpha", b);
  CHECK(z->kind == Expr::Kind::Pow);
  CHECK(z->value == Rational(12, 5));
  CHECK(z->from_param);
  CHECK(evaluate_at_point(parse_expr("X^2*Z + alpha*X^4", b), {Rational(0), Rational(1), Rational(0), Rational(0)}) ==
        Rational(12, 5));
}

TEST_CASE("surfaces need a basepoint on them") {
  CHECK_NOTHROW(parse_surface("W = X*Y + Z^2", {}, {Rational(0), Rational(0), Rational(0), Rational(0)}));
  CHECK_THROWS_AS(parse_surface("W = X*Y + Z^2", {}, {Rational(1), Rational(0), Rational(0), Rational(0)}), DomainError);
  CHECK_THROWS_AS(parse_basepoint("1,2,3"), Error);
  CHECK(parse_basepoint("3/5,4/5,0,0")[1] == Rational(4, 5));
}

TEST_CASE("derivative and substitution on trees") {
  auto e = parse_expr("X^3 + X*Y");
  auto d = derivative(e, Var::X);
  CHECK(evaluate_at_point(d, {Rational(0), Rational(2), Rational(5), Rational(0)}) == Rational(12 + 5));
  auto s = substitute(e, {{Var::X, parse_expr("Y + 1")}});
  CHECK(evaluate_at_point(s, {Rational(0), Rational(0), Rational(2), Rational(0)}) == Rational(27 + 6));
}

TEST_CASE("Taylor coefficients of the primitives") {
  auto ex = taylor_coefficients(Primitive::Exp, Rational(0), 6);
  for (int k = 0; k <= 6; ++k) CHECK(ex[k] == Rational(1) / factorial(k));
  auto lg = taylor_coefficients(Primitive::Log, Rational(1), 6);
  CHECK(lg[0] == Rational(0));
  for (int k = 1; k <= 6; ++k) CHECK(lg[k] == Rational(k % 2 ? 1 : -1, k));
  // (4 + u)^(3/2) = 8 * (1 + u/4)^(3/2)
  auto pw = taylor_coefficients(Primitive::Pow, Rational(4), 5, Rational(3, 2));
  for (int k = 0; k <= 5; ++k) CHECK(pw[k] == Rational(8) * binom(Rational(3, 2), k) * Rational(1, 4).pow(k));
  CHECK_THROWS_AS(taylor_coefficients(Primitive::Exp, Rational(1), 3), DomainError);
  CHECK_THROWS_AS(taylor_coefficients(Primitive::Log, Rational(2), 3), DomainError);
  CHECK_THROWS_AS(taylor_coefficients(Primitive::Pow, Rational(2), 3, Rational(1, 2)), DomainError);
}

TEST_CASE("graph expansion against the binomial series") {
  // W^2 = 1 + u with u = XY + Z^2 at (1,0,0,0): w = sqrt(1 + u) - 1
  auto spec = parse_surface("W^2 = X*Y + Z^2 + 1", {}, {Rational(1), Rational(0), Rational(0), Rational(0)});
  auto u = parse_jet("x*y + z^2", 6);
  Jet<Rational> expect = Jet<Rational>::zero(VarList::xyz(), 6);
  Jet<Rational> power = Jet<Rational>::constant(VarList::xyz(), Rational(1), 6);
  for (int k = 1; k <= 3; ++k) {
    power = power * u;
    expect = expect + power.scaled(binom(Rational(1, 2), k));
  }
  CHECK(expand_graph(spec, 6) == expect);
  CHECK(expand_graph(spec, 2).poly().str() == "1/2*x*y + 1/2*z^2");
  CHECK(graph_residual(spec, expand_graph(spec, 6)).is_zero());
}

TEST_CASE("Newton iteration doubles the correct order") {
  auto spec = parse_surface("W = X*Y + Z^2*log(Z)", {}, {Rational(0), Rational(0), Rational(0), Rational(1)});
  auto full = expand_graph(spec, 8);
  auto it = newton_iterates(spec, 8, 3);
  // element 0 is the starting iterate w = 0
  REQUIRE(it.size() == 4);
  // graph with w absent from the right side: a single step is exact
  CHECK(it[1] == full);

  auto curved = parse_surface("W^2 + W = X*Y + Z^2", {}, {Rational(0), Rational(0), Rational(0), Rational(0)});
  auto target = expand_graph(curved, 8);
  auto steps = newton_iterates(curved, 8, 4);
  for (int k = 1; k < 4; ++k) {
    int correct = (1 << (k + 1)) - 1;
    CHECK(steps[k].truncated(std::min(correct, 8)) == target.truncated(std::min(correct, 8)));
  }
}

TEST_CASE("local jets and alpha powers") {
  Bindings b;
  b.alpha = Rational(12, 5);
  auto spec = parse_surface("W = X*Y + Z^alpha", b, {Rational(1), Rational(0), Rational(0), Rational(1)});
  auto g = expand_graph(spec, 3);
  CHECK(g.poly().coeff(Monomial{0, 0, 1}) == Rational(12, 5));
  CHECK(g.poly().coeff(Monomial{0, 0, 2}) == binom(Rational(12, 5), 2));
  auto l = local_jet(spec, 2);
  CHECK(l.vars() == VarList::xyzw());
  CHECK(l.poly().coeff(Monomial{0, 0, 0, 1}) == Rational(1));

  auto e = parse_surface("W = X*Y + exp(Z)", {}, {Rational(1), Rational(0), Rational(0), Rational(0)});
  CHECK(expand_graph(e, 4).poly().coeff(Monomial{0, 0, 4}) == Rational(1, 24));
  // exp(1) is not rational, so no basepoint with Z = 1 can be checked
  CHECK_THROWS_AS(parse_surface("W = X*Y + exp(Z)", {}, {Rational(1), Rational(0), Rational(0), Rational(1)}), DomainError);
}

TEST_CASE("jet text parsing") {
  auto sp = parse_jet("(1 - (1 - 4*(2*x*y + z^2))^(1/2))/2", 4);
  CHECK(sp == parse_jet("2*x*y + z^2 + 4*x^2*y^2 + 4*x*y*z^2 + z^4", 4));
  auto pj = parse_param_jet("2*x*y + z^2 + x^2*z + b*x^4", 4);
  CHECK(pj.poly().coeff(Monomial{4, 0, 0}) == RatFunc::param());
}
