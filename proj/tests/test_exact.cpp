#include "affhom/jet.hpp"
#include "affhom/linalg.hpp"
#include "affhom/quadext.hpp"
#include "affhom/ratfunc.hpp"
#include "affhom/serialize.hpp"

#include <doctest.h>

using namespace affhom;

namespace {

Poly<Rational> var(std::size_t i) { return Poly<Rational>::variable(VarList::xyz(), i); }
Poly<Rational> cst(Rational c) { return Poly<Rational>::constant(VarList::xyz(), c); }

}  // namespace

TEST_CASE("rational parsing and canonical form") {
  CHECK(Rational::parse("6/4").str() == "3/2");
  CHECK(Rational::parse("-3/4").str() == "-3/4");
  CHECK(Rational::parse("7").str() == "7");
  CHECK(Rational(2, -4).str() == "-1/2");
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("x"), Error);
  CHECK(Rational(9, 4).root(2) == Rational(3, 2));
  CHECK_FALSE(Rational(2).root(2).has_value());
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
}

TEST_CASE("univariate polynomials and Q(b)") {
  UPoly b = UPoly::x();
  UPoly q, r;
  UPoly::divmod(b * b - UPoly(Rational(1)), b - UPoly(Rational(1)), q, r);
  CHECK(q == b + UPoly(Rational(1)));
  CHECK(r.is_zero());

  RatFunc t = RatFunc::param();
  RatFunc f = (t * t - RatFunc(1)) / (t - RatFunc(1));
  CHECK(f == t + RatFunc(1));
  CHECK(f.den().is_constant());

  RatFunc g = RatFunc(Rational(2)) * t / (t + RatFunc(4));
  CHECK(g.eval(Rational(1)) == Rational(2, 5));
  CHECK_FALSE(g.eval(Rational(-4)).has_value());
  CHECK(g.str() == "(2*b)/(b + 4)");
}

TEST_CASE("quadratic extension towers") {
  auto [t1, i] = sqrt_in_tower(Rational(-1), Tower{});
  CHECK(i * i == QuadExt(Rational(-1)));
  auto [t2, s] = sqrt_in_tower(Rational(2), t1);
  QuadExt ii = i.embedded(t2);
  CHECK(s * s == QuadExt(Rational(2)));
  CHECK((ii * s) * (ii * s) == QuadExt(Rational(-2)));
  // 1/(1 + sqrt 2) = sqrt 2 - 1
  CHECK((QuadExt(Rational(1)) + s).inverse() == s - QuadExt(Rational(1)));
  // perfect squares stay rational
  auto [t3, three] = sqrt_in_tower(Rational(9, 4), Tower{});
  CHECK(three == QuadExt(Rational(3, 2)));
  CHECK(t3.depth() == 0);
}

TEST_CASE("grevlex ordering and polynomial arithmetic") {
  Poly<Rational> x = var(0), y = var(1), z = var(2);
  Poly<Rational> p = y * y + x * z;
  CHECK(p.leading().first == Monomial{0, 2, 0});
  Poly<Rational> q = x * y * z + x * x + z;
  CHECK(q.leading().first == Monomial{1, 1, 1});
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK((x * x * y).partial(0) == (x * y).scaled(Rational(2)));
  CHECK((x + y).pow(3).size() == 4);
  CHECK(p.str() == "y^2 + x*z");
}

TEST_CASE("jets truncate products and invert units") {
  Jet<Rational> x = Jet<Rational>::variable(VarList::xyz(), 0, 5);
  Jet<Rational> one = Jet<Rational>::constant(VarList::xyz(), Rational(1), 5);
  Jet<Rational> inv = (one - x).inverse();
  Poly<Rational> expect = cst(Rational(0));
  for (int k = 0; k <= 5; ++k) expect += var(0).pow(k);
  CHECK(inv.poly() == expect);
  CHECK((x * x * x).truncated(2).is_zero());
  CHECK_THROWS_AS(x.inverse(), DomainError);
  CHECK(inv.str().find("O(6)") != std::string::npos);
}

TEST_CASE("substitution composes under truncation") {
  Poly<Rational> x = var(0), y = var(1), z = var(2);
  Poly<Rational> f = x * y + z * z;
  std::vector<Poly<Rational>> images{x + y, x - y, z + x * x};
  Jet<Rational> j = substitute(f, images, 3);
  // (x+y)(x-y) + (z+x^2)^2 = x^2 - y^2 + z^2 + 2x^2 z + O(4)
  CHECK(j.poly() == x * x - y * y + z * z + (x * x * z).scaled(Rational(2)));
}

TEST_CASE("exact linear solves") {
  LinearSystem<Rational> sys({"a", "b", "c"});
  sys.add({{"a", Rational(1)}, {"b", Rational(1)}}, Rational(3));
  sys.add({{"b", Rational(1)}, {"c", Rational(-1)}}, Rational(1));
  auto fam = linear_solve(sys);
  REQUIRE(fam);
  CHECK(fam->dimension() == 1);
  CHECK(fam->free_names() == std::vector<std::string>{"c"});
  for (Rational t : {Rational(0), Rational(5, 7), Rational(-2)}) {
    auto m = fam->member({t});
    CHECK(m[0] + m[1] == Rational(3));
    CHECK(m[1] - m[2] == Rational(1));
  }
  sys.add({{"a", Rational(1)}, {"c", Rational(1)}}, Rational(2));
  sys.add({{"a", Rational(1)}, {"c", Rational(1)}}, Rational(3));
  CHECK_FALSE(linear_solve(sys).has_value());

  std::vector<std::vector<Rational>> m{{Rational(1), Rational(2), Rational(3)}, {Rational(2), Rational(4), Rational(6)}};
  CHECK(rank(m) == 1);
  CHECK(nullspace(m, 3).size() == 2);
}

TEST_CASE("linear solve over Q(b)") {
  RatFunc b = RatFunc::param();
  LinearSystem<RatFunc> sys({"u", "v"});
  sys.add(std::vector<RatFunc>{b, RatFunc(1)}, RatFunc(1));
  sys.add(std::vector<RatFunc>{RatFunc(1), b}, RatFunc(1));
  auto fam = linear_solve(sys);
  REQUIRE(fam);
  // u = v = 1/(b + 1) for generic b
  CHECK(fam->value("u") == RatFunc(1) / (b + RatFunc(1)));
  CHECK(fam->value("v") == fam->value("u"));
}

TEST_CASE("jet JSON serialization round trip") {
  Jet<Rational> j(var(0) * var(1) + var(2).scaled(Rational(-3, 4)), 3);
  Json js = jet_json(j);
  CHECK(js["order"] == 3);
  CHECK(js["terms"][0]["m"] == Json::array({0, 0, 1}));
  CHECK(js["terms"][0]["c"] == "-3/4");
  CHECK(jet_from_json(js) == j);
  CHECK_THROWS_AS(jet_from_json(Json::object()), Error);

  auto [t, i] = sqrt_in_tower(Rational(-1), Tower{});
  QuadExt h = (QuadExt(Rational(1)) - i) * QuadExt(Rational(1, 2));
  Json q = scalar_json(h);
  CHECK(q["basis"] == Json::array({"1", "i"}));
  CHECK(q["coords"] == Json::array({"1/2", "-1/2"}));
}
