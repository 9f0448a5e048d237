// Randomized algebraic laws. Every suite runs kCases seeded cases so failures
// reproduce; the seed and case index are in the failure message.
#include "affhom/catalog.hpp"
#include "affhom/expand.hpp"
#include "affhom/groebner.hpp"
#include "affhom/normalize.hpp"
#include "affhom/quadext.hpp"
#include "affhom/symmetry.hpp"

#include <doctest.h>

#include <random>

using namespace affhom;

namespace {

constexpr int kCases = 200;
constexpr unsigned kSeed = 20260415;

struct Gen {
  std::mt19937 rng;
  explicit Gen(unsigned salt) : rng(kSeed + salt) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  Rational rational(long span = 5) {
    long d = integer(1, span);
    return Rational(integer(-span, span), d);
  }
  Rational nonzero(long span = 5) {
    Rational r;
    do r = rational(span);
    while (r.is_zero());
    return r;
  }
  Poly<Rational> poly(int max_deg, int terms, const VarList& vars = VarList::xyz()) {
    Poly<Rational> p(vars);
    for (int t = 0; t < terms; ++t) {
      std::vector<Monomial::Exponent> e(vars.size(), 0);
      int d = int(integer(0, max_deg));
      for (int k = 0; k < d; ++k) ++e[std::size_t(integer(0, long(vars.size()) - 1))];
      p.add_term(Monomial(e), rational());
    }
    return p;
  }
  Jet<Rational> jet(int order) { return Jet<Rational>(poly(order, 6), order); }
  AffineVectorField<Rational> field(bool translation = true) {
    AffineVectorField<Rational> f;
    for (auto& row : f.A)
      for (auto& x : row) x = integer(0, 2) == 0 ? rational() : Rational(0);
    if (translation)
      for (auto& x : f.v) x = integer(0, 1) ? rational() : Rational(0);
    return f;
  }
};

}  // namespace

TEST_CASE("jet arithmetic is a truncated ring") {
  Gen g(1);
  for (int i = 0; i < kCases; ++i) {
    CAPTURE(i);
    int n = int(g.integer(1, 5));
    auto a = g.jet(n), b = g.jet(n), c = g.jet(n);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK((a + b) - b == a);
    // multiplication commutes with truncation
    int m = int(g.integer(0, n));
    CHECK((a * b).truncated(m) == a.truncated(m) * b.truncated(m));
  }
}

TEST_CASE("substitution is a ring homomorphism") {
  Gen g(2);
  for (int i = 0; i < kCases; ++i) {
    CAPTURE(i);
    int n = int(g.integer(1, 5));
    auto p = g.poly(3, 4), q = g.poly(3, 4);
    // images without constant terms keep the truncation exact
    std::vector<Poly<Rational>> images;
    for (int k = 0; k < 3; ++k) {
      Poly<Rational> im = g.poly(2, 3);
      im.add_term(Monomial(std::size_t(3)), -im.coeff(Monomial(std::size_t(3))));
      images.push_back(im);
    }
    CHECK(substitute(p * q, images, n) == substitute(p, images, n) * substitute(q, images, n));
    CHECK(substitute(p + q, images, n) == substitute(p, images, n) + substitute(q, images, n));
  }
}

TEST_CASE("scalar round trips") {
  Gen g(3);
  auto [t1, i] = sqrt_in_tower(Rational(-1), Tower{});
  auto [t2, s] = sqrt_in_tower(Rational(2), t1);
  QuadExt ii = i.embedded(t2);
  for (int k = 0; k < kCases; ++k) {
    CAPTURE(k);
    Rational a = g.nonzero(50), b = g.nonzero(50);
    CHECK((a / b) * (b / a) == Rational(1));
    QuadExt x(t2, {g.rational(), g.rational(), g.rational(), g.rational()});
    if (!x.is_zero()) CHECK(x * x.inverse() == QuadExt(Rational(1)));
    // generators satisfy their minimal polynomials
    CHECK(ii * ii + QuadExt(Rational(1)) == QuadExt(Rational(0)));
    CHECK(s * s - QuadExt(Rational(2)) == QuadExt(Rational(0)));
    RatFunc r = RatFunc(UPoly({g.rational(), g.nonzero()}), UPoly({g.nonzero(), g.rational()}));
    if (!r.is_zero()) CHECK(r * (RatFunc(1) / r) == RatFunc(1));
  }
}

TEST_CASE("linear solutions satisfy their systems") {
  Gen g(4);
  for (int k = 0; k < kCases; ++k) {
    CAPTURE(k);
    std::size_t n = std::size_t(g.integer(2, 6)), rows = std::size_t(g.integer(1, 6));
    std::vector<std::string> names;
    for (std::size_t j = 0; j < n; ++j) names.push_back("u" + std::to_string(j));
    LinearSystem<Rational> sys(names);
    // rhs from a known point keeps the system consistent
    std::vector<Rational> x0;
    for (std::size_t j = 0; j < n; ++j) x0.push_back(g.rational());
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<Rational> row;
      Rational rhs(0);
      for (std::size_t j = 0; j < n; ++j) {
        row.push_back(g.integer(0, 1) ? g.rational() : Rational(0));
        rhs += row.back() * x0[j];
      }
      sys.add(row, rhs);
    }
    auto fam = linear_solve(sys);
    REQUIRE(fam);
    std::vector<Rational> params;
    for (std::size_t d = 0; d < fam->dimension(); ++d) params.push_back(g.rational());
    auto x = fam->member(params);
    for (std::size_t r = 0; r < rows; ++r) {
      Rational lhs(0);
      for (std::size_t j = 0; j < n; ++j) lhs += sys.rows[r][j] * x[j];
      CHECK(lhs == sys.rhs[r]);
    }
    CHECK(fam->dimension() + rank(sys.rows) == n);
  }
}

TEST_CASE("bracket is antisymmetric and satisfies Jacobi") {
  Gen g(5);
  for (int k = 0; k < kCases; ++k) {
    CAPTURE(k);
    auto a = g.field(), b = g.field(), c = g.field();
    CHECK(bracket(a, b) == bracket(b, a).scaled(Rational(-1)));
    auto jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
    CHECK(jac.is_zero_field());
    Rational s = g.rational();
    CHECK(bracket(a.scaled(s) + b, c) == bracket(a, c).scaled(s) + bracket(b, c));
  }
}

TEST_CASE("tangency residual is linear in the field") {
  Gen g(6);
  for (int k = 0; k < kCases; ++k) {
    CAPTURE(k);
    int n = int(g.integer(3, 5));
    Jet<Rational> f(parse_jet("2*x*y + z^2", n).poly() + g.poly(n, 4).truncated(n) - g.poly(1, 2), n);
    auto a = g.field(), b = g.field();
    Rational s = g.rational(), t = g.rational();
    int m = n - 1;
    auto lhs = tangency_residual(f, a.scaled(s) + b.scaled(t), m);
    auto rhs = tangency_residual(f, a, m).scaled(s) + tangency_residual(f, b, m).scaled(t);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("trace decomposition is idempotent") {
  Gen g(7);
  for (int k = 0; k < kCases; ++k) {
    CAPTURE(k);
    Matrix3<Rational> h;
    Rational det;
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) h[i][j] = h[j][i] = g.rational(3);
      det = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
            h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    } while (det.is_zero());
    Poly<Rational> c = g.poly(3, 6).homogeneous_part(3);
    auto [free, trace] = trace_decompose(c, h);
    CHECK(free + quadratic_poly(h) * trace == c);
    CHECK(is_trace_free(free, h));
    auto [free2, trace2] = trace_decompose(free, h);
    CHECK(free2 == free);
    CHECK(trace2.is_zero());
  }
}

TEST_CASE("S-polynomials of a Groebner basis reduce to zero") {
  Gen g(8);
  VarList ring({"u", "v", "s"});
  for (int k = 0; k < kCases; ++k) {
    CAPTURE(k);
    std::vector<QPoly> gens;
    int count = int(g.integer(2, 3));
    for (int i = 0; i < count; ++i) gens.push_back(g.poly(2, 3, ring));
    auto gb = buchberger(gens);
    for (const auto& p : gens) CHECK(reduce(p, gb).is_zero());
    for (std::size_t i = 0; i < gb.size(); ++i)
      for (std::size_t j = i + 1; j < gb.size(); ++j) CHECK(reduce(s_polynomial(gb[i], gb[j]), gb).is_zero());
  }
}

TEST_CASE("completion is coherent under truncation") {
  Gen g(9);
  const char* forms[] = {"I2", "I0.1", "I0.2", "I0.3", "I3", "I1.1"};
  int done = 0;
  for (int k = 0; k < kCases; ++k) {
    CAPTURE(k);
    const NormalForm& nf = *find_normal_form(forms[k % 6]);
    std::optional<Rational> b;
    if (nf.parametric()) b = g.rational(20);
    Jet<Rational> base = nf.jet(b);
    std::array<Matrix4<Rational>, 3> pqr;
    bool ok = true;
    for (int a = 0; a < 3; ++a) {
      auto fam = solve_tangency(base, Translation<Rational>::axis(a), {}, "p");
      ok = ok && fam.has_value();
      if (fam) pqr[a] = fam->particular().A;
    }
    CHECK(ok);
    if (!ok) continue;
    int high = int(g.integer(5, 7)), low = int(g.integer(4, high));
    auto full = complete_series(base, pqr[0], pqr[1], pqr[2], high);
    CHECK(complete_series(base, pqr[0], pqr[1], pqr[2], low) == full.truncated(low));
    ++done;
  }
  CHECK(done == kCases);
}
