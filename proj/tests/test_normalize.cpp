#include "affhom/expand.hpp"
#include "affhom/normalize.hpp"

#include <doctest.h>

#include <set>

using namespace affhom;

namespace {

Matrix3<Rational> standard_gram() { return gram_matrix(parse_jet("2*x*y + z^2", 2).poly()); }

}  // namespace

TEST_CASE("Gram matrix of the standard form") {
  auto h = standard_gram();
  CHECK(h[0][1] == Rational(1));
  CHECK(h[1][0] == Rational(1));
  CHECK(h[2][2] == Rational(1));
  CHECK(h[0][0] == Rational(0));
  CHECK(quadratic_poly(h) == parse_jet("2*x*y + z^2", 2).poly());
}

TEST_CASE("trace decomposition of cubics") {
  auto h = standard_gram();
  // x*y*z has trace part; 3xyz - z^3 is trace free
  auto c = parse_jet("x*y*z", 3).poly();
  auto [free, trace] = trace_decompose(c, h);
  CHECK(is_trace_free(free, h));
  CHECK(free + quadratic_poly(h) * trace == c);
  CHECK(is_trace_free(parse_jet("3*x*y*z - z^3", 3).poly(), h));
  for (const auto& b : trace_free_basis()) CHECK(is_trace_free(b, h));
  CHECK(trace_free_basis().size() == 7);
}

TEST_CASE("cubic types and their invariants") {
  auto h = standard_gram();
  struct Row {
    const char* cubic;
    int rank;
    CubicType type;
  };
  for (const Row& r : {Row{"x^3", 1, CubicType::I3}, Row{"x^2*z", 2, CubicType::I2},
                       Row{"x^2*y - 2*x*z^2", 3, CubicType::I1}, Row{"3*x*y*z - z^3", 3, CubicType::I0}}) {
    auto c = parse_jet(r.cubic, 3).poly();
    CHECK(partials_rank(c) == r.rank);
    CHECK(cubic_type(c, h) == r.type);
  }
  CHECK(cubic_type(Poly<Rational>(VarList::xyz()), h) == CubicType::Zero);
}

TEST_CASE("complex normalization reaches 2xy + z^2") {
  auto j = parse_jet("x^2 + y^2 + z^2 + x^3", 3);
  auto n = normalize_quadratic(j, Field::Complex);
  // the recorded signature is that of the input form
  CHECK(n.form.signature == Signature::Elliptic);
  CHECK(n.tower.depth() >= 1);
  auto quad = n.jet.poly().homogeneous_part(2);
  auto expect = lift<QuadExt>(parse_jet("2*x*y + z^2", 2).poly());
  CHECK(quad == expect);
}

TEST_CASE("real normalization keeps definite forms elliptic") {
  auto j = parse_jet("2*x^2 + 3*y^2 + z^2 + x*y*z", 3);
  auto n = normalize_quadratic(j, Field::Real);
  CHECK(n.form.signature == Signature::Elliptic);
  auto quad = n.jet.poly().homogeneous_part(2);
  CHECK(quad == lift<QuadExt>(parse_jet("x^2 + y^2 + z^2", 2).poly()));

  auto hyp = normalize_quadratic(parse_jet("x*y + z^2 + x + y", 2), Field::Real);
  CHECK(hyp.form.signature == Signature::Hyperbolic);
  CHECK(hyp.jet.poly() == lift<QuadExt>(parse_jet("2*x*y + z^2", 2).poly()));
  CHECK_THROWS_AS(normalize_quadratic(parse_jet("x*y", 2), Field::Complex), DegenerateError);
}

TEST_CASE("rational normalization of (xy + z^2)/2") {
  auto j = parse_jet("1/2*x*y + 1/2*z^2", 2);
  // oracle: x -> 2x then w -> 2w gives 2xy + z^2 by direct substitution
  Matrix3<Rational> m{};
  for (auto& row : m) row.fill(Rational(0));
  m[0][0] = Rational(2);
  m[1][1] = m[2][2] = Rational(1);
  CHECK(compose_linear(j, m).scaled(Rational(2)).poly() == parse_jet("2*x*y + z^2", 2).poly());
  auto n = normalize_quadratic(j, Field::Complex);
  CHECK(n.tower.depth() == 0);
  CHECK(n.jet.poly() == lift<QuadExt>(parse_jet("2*x*y + z^2", 2).poly()));
}

TEST_CASE("cubic type ignores linear terms") {
  CHECK(jet_cubic_type(parse_jet("x + 2*x*y + z^2 + x^3", 3)) == CubicType::I3);
  CHECK(jet_cubic_type(parse_jet("2*x*y + z^2 + 3*x*y*z - z^3", 3)) == CubicType::I0);
}

TEST_CASE("isotropy generator normal forms") {
  auto g = classify_isotropy_generator(generator_matrix(GeneratorKind::Scaling, Rational(2)));
  CHECK(g.kind == GeneratorKind::Scaling);
  CHECK(g.t == Rational(2));
  auto n = classify_isotropy_generator(generator_matrix(GeneratorKind::NullRotation, Rational(0)));
  CHECK(n.kind == GeneratorKind::NullRotation);
  CHECK(n.norm == Rational(0));
  auto p = classify_isotropy_generator(generator_matrix(GeneratorKind::PureRescaling, Rational(0)));
  CHECK(p.kind == GeneratorKind::PureRescaling);
}

TEST_CASE("constrained cubics") {
  auto s = constrained_cubics(GeneratorKind::Scaling);
  REQUIRE(s.size() == 7);
  std::set<long> seen;
  for (const auto& c : s) {
    REQUIRE(c.t.is_integer());
    long t = c.t.num().get_si();
    seen.insert(t);
    // the kernel is basis cubic number 3 - t
    for (long k = 0; k < 7; ++k) CHECK(c.ray[k].is_zero() == (k != 3 - t));
  }
  CHECK(seen == std::set<long>{-3, -2, -1, 0, 1, 2, 3});
  auto nr = constrained_cubics(GeneratorKind::NullRotation);
  REQUIRE(nr.size() == 1);
  CHECK(nr[0].t == Rational(0));
  CHECK(constrained_cubics(GeneratorKind::PureRescaling).empty());
}
