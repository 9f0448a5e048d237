#include "affhom/groebner.hpp"

#include <doctest.h>

using namespace affhom;

namespace {

VarList ring2() { return VarList({"x", "y"}); }

QPoly v(const VarList& r, std::size_t i) { return QPoly::variable(r, i); }
QPoly c(const VarList& r, long n) { return QPoly::constant(r, Rational(n)); }

}  // namespace

TEST_CASE("reduced basis of a linear ideal") {
  auto r = ring2();
  QPoly x = v(r, 0), y = v(r, 1);
  std::vector<QPoly> gens{x + y - c(r, 3), x - y + c(r, 1), x * y - c(r, 2)};
  auto gb = buchberger(gens);
  REQUIRE(gb.size() == 2);
  CHECK(gb[0] == x - c(r, 1));
  CHECK(gb[1] == y - c(r, 2));
}

TEST_CASE("circle and hyperbola") {
  auto r = ring2();
  QPoly x = v(r, 0), y = v(r, 1);
  std::vector<QPoly> gens{x * x + y * y - c(r, 4), x * y - c(r, 1)};
  auto gb = buchberger(gens, TermOrder::Lex);
  // lex basis with x > y contains a univariate polynomial in y
  bool univariate = false;
  for (const auto& g : gb) {
    bool only_y = true;
    for (const auto& [m, k] : g.terms()) only_y = only_y && m[0] == 0;
    univariate = univariate || only_y;
  }
  CHECK(univariate);
  for (const auto& g : gens) CHECK(reduce(g, gb, TermOrder::Lex).is_zero());
  for (std::size_t i = 0; i < gb.size(); ++i)
    for (std::size_t j = i + 1; j < gb.size(); ++j)
      CHECK(reduce(s_polynomial(gb[i], gb[j], TermOrder::Lex), gb, TermOrder::Lex).is_zero());
}

TEST_CASE("leading monomials follow the term order") {
  auto r = ring2();
  QPoly x = v(r, 0), y = v(r, 1);
  QPoly p = x + y * y;
  CHECK(leading_monomial(p, TermOrder::Grevlex) == Monomial{0, 2});
  CHECK(leading_monomial(p, TermOrder::Lex) == Monomial{1, 0});
}

TEST_CASE("rational roots") {
  // 2b^2 - 3b + 1 = (2b - 1)(b - 1)
  auto roots = rational_roots({Rational(1), Rational(-3), Rational(2)});
  REQUIRE(roots.size() == 2);
  CHECK(std::find(roots.begin(), roots.end(), Rational(1, 2)) != roots.end());
  CHECK(std::find(roots.begin(), roots.end(), Rational(1)) != roots.end());
  CHECK(rational_roots({Rational(-2), Rational(0), Rational(1)}).empty());
  CHECK(rational_roots({Rational(0), Rational(0), Rational(1)}) == std::vector<Rational>{Rational(0)});
}

TEST_CASE("solving zero- and positive-dimensional systems") {
  auto r = ring2();
  QPoly x = v(r, 0), y = v(r, 1);
  auto pts = solve_zero_dim({x * x - c(r, 1), y - x});
  CHECK(pts.points.size() == 2);
  CHECK(pts.families.empty());
  CHECK(pts.residual.empty());
  for (const auto& p : pts.points) CHECK(p.at("x") == p.at("y"));

  auto line = solve_zero_dim({x * y - y, y * y - y});
  // y = 0 with x free, or y = 1 and x = 1
  CHECK(line.points.size() == 1);
  CHECK(line.families.size() == 1);
  CHECK(line.families[0].free == std::vector<std::string>{"x"});

  auto none = solve_zero_dim({x * x + c(r, 1)});
  CHECK(none.points.empty());
  CHECK(none.families.empty());
  CHECK(none.residual.size() == 1);

  auto empty = solve_zero_dim({x - c(r, 1), x - c(r, 2)});
  CHECK(empty.points.empty());
  CHECK(empty.residual.empty());
  CHECK(empty.to_json()["points"].empty());
}
