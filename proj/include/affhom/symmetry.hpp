#pragma once

#include "affhom/jet.hpp"
#include "affhom/linalg.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace affhom {

template <class T>
using Matrix4 = std::array<std::array<T, 4>, 4>;

template <Scalar S>
Matrix4<S> zero_matrix() {
  Matrix4<S> m;
  for (auto& row : m) row.fill(S(Rational(0)));
  return m;
}

template <Scalar S>
Matrix4<S> diagonal(const std::array<S, 4>& d) {
  Matrix4<S> m = zero_matrix<S>();
  for (int i = 0; i < 4; ++i) m[i][i] = d[i];
  return m;
}

template <class T>
Matrix4<T> matmul(const Matrix4<T>& a, const Matrix4<T>& b) {
  Matrix4<T> r = a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      T acc = a[i][0] * b[0][j];
      for (int k = 1; k < 4; ++k) acc = acc + a[i][k] * b[k][j];
      r[i][j] = acc;
    }
  return r;
}

template <class T>
Matrix4<T> matsub(const Matrix4<T>& a, const Matrix4<T>& b) {
  Matrix4<T> r = a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

template <class T>
Matrix4<T> matscale(const T& c, const Matrix4<T>& a) {
  Matrix4<T> r = a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = c * a[i][j];
  return r;
}

/// The vector field p -> A p + v on (x, y, z, w)-space.
template <Scalar S>
struct AffineVectorField {
  Matrix4<S> A = zero_matrix<S>();
  std::array<S, 4> v{S(Rational(0)), S(Rational(0)), S(Rational(0)), S(Rational(0))};

  bool has_spatial_translation() const { return !is_zero(v[0]) || !is_zero(v[1]) || !is_zero(v[2]); }
  bool is_zero_field() const {
    for (const auto& row : A)
      for (const auto& c : row)
        if (!is_zero(c)) return false;
    for (const auto& c : v)
      if (!is_zero(c)) return false;
    return true;
  }
  /// Coordinates (A row-major, then v).
  std::vector<S> coords() const {
    std::vector<S> c;
    for (const auto& row : A)
      for (const auto& x : row) c.push_back(x);
    for (const auto& x : v) c.push_back(x);
    return c;
  }
  static AffineVectorField from_coords(const std::vector<S>& c) {
    AffineVectorField f;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) f.A[i][j] = c[4 * i + j];
    for (int i = 0; i < 4; ++i) f.v[i] = c[16 + i];
    return f;
  }
  friend bool operator==(const AffineVectorField&, const AffineVectorField&) = default;
  friend AffineVectorField operator+(const AffineVectorField& a, const AffineVectorField& b) {
    AffineVectorField r;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) r.A[i][j] = a.A[i][j] + b.A[i][j];
      r.v[i] = a.v[i] + b.v[i];
    }
    return r;
  }
  AffineVectorField scaled(const S& s) const {
    AffineVectorField r;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) r.A[i][j] = s * A[i][j];
      r.v[i] = s * v[i];
    }
    return r;
  }
};

/// Lie bracket of affine vector fields: (A2 A1 - A1 A2, A2 v1 - A1 v2).
template <Scalar S>
AffineVectorField<S> bracket(const AffineVectorField<S>& f1, const AffineVectorField<S>& f2) {
  AffineVectorField<S> r;
  r.A = matsub(matmul(f2.A, f1.A), matmul(f1.A, f2.A));
  for (int i = 0; i < 4; ++i) {
    S acc(Rational(0));
    for (int k = 0; k < 4; ++k) acc = acc + f2.A[i][k] * f1.v[k] - f1.A[i][k] * f2.v[k];
    r.v[i] = acc;
  }
  return r;
}

/// Tr^M[(F_x, F_y, F_z, -1) . (A (x, y, z, F) + v)] on the polynomial F
/// (no precondition checks; see tangency_residual).
template <Scalar S>
Poly<S> tangency_residual_poly(const Poly<S>& f, const AffineVectorField<S>& field, int max_degree) {
  const VarList& vars = f.vars();
  std::array<Poly<S>, 4> point{Poly<S>::variable(vars, 0), Poly<S>::variable(vars, 1), Poly<S>::variable(vars, 2), f};
  Poly<S> result(vars);
  for (int i = 0; i < 4; ++i) {
    Poly<S> comp = Poly<S>::constant(vars, field.v[i]);
    for (int j = 0; j < 4; ++j)
      if (!is_zero(field.A[i][j])) comp += point[j].truncated(max_degree).scaled(field.A[i][j]);
    if (comp.is_zero()) continue;
    if (i < 3) {
      result += f.partial(static_cast<std::size_t>(i)).mul_truncated(comp, max_degree);
    } else {
      result -= comp.truncated(max_degree);
    }
  }
  return result;
}

/// Residual of the tangency identity for the field on the jet F, truncated at
/// M. Requires M <= N-1 when the field translates in x, y or z and M <= N for
/// purely linear fields.
template <Scalar S>
Jet<S> tangency_residual(const Jet<S>& f, const AffineVectorField<S>& field, int m) {
  int limit = field.has_spatial_translation() ? f.order() - 1 : f.order();
  if (m > limit)
    throw Error("tangency truncation " + std::to_string(m) + " exceeds what an order-" +
                std::to_string(f.order()) + " jet determines");
  return Jet<S>(tangency_residual_poly(f.poly(), field, m), m);
}

/// Prescribed translation of the unknown field, or free translation.
template <Scalar S>
struct Translation {
  std::optional<std::array<S, 4>> fixed;  // nullopt = free

  static Translation free() { return {}; }
  static Translation zero() { return {std::array<S, 4>{S(Rational(0)), S(Rational(0)), S(Rational(0)), S(Rational(0))}}; }
  static Translation axis(int i) {
    Translation t = zero();
    (*t.fixed)[i] = S(Rational(1));
    return t;
  }
  bool spatial() const {
    return !fixed || !is_zero((*fixed)[0]) || !is_zero((*fixed)[1]) || !is_zero((*fixed)[2]);
  }
};

/// Name of matrix entry (i, j), 0-based, e.g. "p13" for prefix "p", i=0, j=2.
inline std::string entry_name(const std::string& prefix, int i, int j) {
  return prefix + std::to_string(i + 1) + std::to_string(j + 1);
}

/// Unknown names in elimination order: entries outside rows 1-3 x columns 3-4
/// first, so that those entries are the ones left free.
inline std::vector<std::pair<int, int>> entry_order() {
  std::vector<std::pair<int, int>> late, early;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ((i < 3 && j >= 2) ? late : early).emplace_back(i, j);
  early.insert(early.end(), late.begin(), late.end());
  return early;
}

/// Unknown field with named entries, as returned by solve_tangency.
template <Scalar S>
struct FieldFamily {
  std::string prefix;
  SolutionFamily<S> family;
  int truncation = 0;
  std::array<S, 4> fixed_v{S(Rational(0)), S(Rational(0)), S(Rational(0)), S(Rational(0))};  // prescribed translation, carried by particular() only

  AffineVectorField<S> field_at(const std::vector<S>& values) const {
    AffineVectorField<S> f;
    for (std::size_t k = 0; k < family.unknowns.size(); ++k) place(f, family.unknowns[k], values[k]);
    return f;
  }
  AffineVectorField<S> particular() const {
    AffineVectorField<S> f = field_at(family.particular);
    for (int i = 0; i < 4; ++i)
      if (!is_zero(fixed_v[i])) f.v[i] = fixed_v[i];
    return f;
  }
  std::vector<AffineVectorField<S>> homogeneous_basis() const {
    std::vector<AffineVectorField<S>> b;
    for (const auto& v : family.basis) b.push_back(field_at(v));
    return b;
  }
  std::vector<std::string> free_names() const { return family.free_names(); }

  void place(AffineVectorField<S>& f, const std::string& name, const S& value) const {
    if (name.size() == prefix.size() + 2 && name.compare(0, prefix.size(), prefix) == 0) {
      int i = name[prefix.size()] - '1', j = name[prefix.size() + 1] - '1';
      f.A[i][j] = value;
    } else if (name.size() == 2 && name[0] == 'v') {
      f.v[name[1] - '1'] = value;
    }
  }
};

/// Linear conditions for the field (A, v) to be tangent to F. Translated
/// fields use truncation N-1, purely linear ones N. Rows of `extra` whose
/// unknowns all belong to this solve are appended.
template <Scalar S>
std::optional<FieldFamily<S>> solve_tangency(const Jet<S>& f, const Translation<S>& translation,
                                             const LinearSystem<S>& extra = {}, const std::string& prefix = "a") {
  FieldFamily<S> out;
  out.prefix = prefix;
  out.truncation = translation.spatial() ? f.order() - 1 : f.order();
  const int m = out.truncation;

  std::vector<std::string> names;
  std::vector<AffineVectorField<S>> units;
  for (auto [i, j] : entry_order()) {
    names.push_back(entry_name(prefix, i, j));
    AffineVectorField<S> u;
    u.A[i][j] = S(Rational(1));
    units.push_back(u);
  }
  AffineVectorField<S> fixed_part;
  if (translation.fixed) {
    fixed_part.v = *translation.fixed;
    out.fixed_v = *translation.fixed;
  } else {
    for (int i = 0; i < 4; ++i) {
      names.push_back("v" + std::to_string(i + 1));
      AffineVectorField<S> u;
      u.v[i] = S(Rational(1));
      units.push_back(u);
    }
  }

  std::vector<Poly<S>> residuals;
  for (const auto& u : units) residuals.push_back(tangency_residual_poly(f.poly(), u, m));
  Poly<S> r0 = tangency_residual_poly(f.poly(), fixed_part, m);

  std::map<Monomial, std::size_t, GrevlexGreater> rows;
  auto row_of = [&](const Monomial& mon) {
    auto it = rows.find(mon);
    if (it != rows.end()) return it->second;
    std::size_t k = rows.size();
    rows.emplace(mon, k);
    return k;
  };
  for (const auto& r : residuals)
    for (const auto& [mon, c] : r.terms()) row_of(mon);
  for (const auto& [mon, c] : r0.terms()) row_of(mon);

  LinearSystem<S> sys(names);
  std::vector<std::vector<S>> mat(rows.size(), std::vector<S>(names.size(), S(Rational(0))));
  std::vector<S> rhs(rows.size(), S(Rational(0)));
  for (std::size_t k = 0; k < residuals.size(); ++k)
    for (const auto& [mon, c] : residuals[k].terms()) mat[rows.at(mon)][k] = c;
  for (const auto& [mon, c] : r0.terms()) rhs[rows.at(mon)] = -c;
  for (std::size_t r = 0; r < mat.size(); ++r) sys.add(std::move(mat[r]), rhs[r]);

  for (std::size_t r = 0; r < extra.rows.size(); ++r) {
    std::map<std::string, S> coeffs;
    bool ours = true;
    for (std::size_t j = 0; j < extra.unknowns.size(); ++j) {
      if (is_zero(extra.rows[r][j])) continue;
      if (std::find(names.begin(), names.end(), extra.unknowns[j]) == names.end()) ours = false;
      coeffs[extra.unknowns[j]] = extra.rows[r][j];
    }
    if (ours) sys.add(coeffs, extra.rhs[r]);
  }

  auto fam = linear_solve(sys);
  if (!fam) return std::nullopt;
  out.family = std::move(*fam);
  return out;
}

/// The three bracket combinations of the closure criterion, verbatim.
template <class T>
std::array<Matrix4<T>, 3> closure_matrices(const Matrix4<T>& p, const Matrix4<T>& q, const Matrix4<T>& r) {
  // entry (i, j) in 1-based notation
  auto e = [](const Matrix4<T>& m, int i, int j) -> const T& { return m[i - 1][j - 1]; };
  Matrix4<T> x1 = matsub(matmul(p, q), matmul(q, p));
  x1 = matsub(x1, matscale(T(e(p, 1, 2) - e(q, 1, 1)), p));
  x1 = matsub(x1, matscale(T(e(p, 2, 2) - e(q, 2, 1)), q));
  x1 = matsub(x1, matscale(T(e(p, 3, 2) - e(q, 3, 1)), r));
  Matrix4<T> x2 = matsub(matmul(q, r), matmul(r, q));
  x2 = matsub(x2, matscale(T(e(q, 2, 3) - e(r, 2, 2)), q));
  x2 = matsub(x2, matscale(T(e(q, 3, 3) - e(r, 3, 2)), r));
  x2 = matsub(x2, matscale(T(e(q, 1, 3) - e(r, 1, 2)), p));
  Matrix4<T> x3 = matsub(matmul(r, p), matmul(p, r));
  x3 = matsub(x3, matscale(T(e(r, 3, 1) - e(p, 3, 3)), r));
  x3 = matsub(x3, matscale(T(e(r, 1, 1) - e(p, 1, 3)), p));
  x3 = matsub(x3, matscale(T(e(r, 2, 1) - e(p, 2, 3)), q));
  return {x1, x2, x3};
}

class CompletionError : public Error {
 public:
  enum class Kind { Inconsistent, Underdetermined };
  CompletionError(Kind kind, int order)
      : Error(std::string(kind == Kind::Inconsistent ? "inconsistent" : "underdetermined") +
              " completion system at order " + std::to_string(order)),
        kind_(kind),
        order_(order) {}
  Kind kind() const { return kind_; }
  int order() const { return order_; }

 private:
  Kind kind_;
  int order_;
};

/// Monomials in x, y, z of exact total degree d, in descending grevlex order.
inline std::vector<Monomial> monomials_of_degree(int d) {
  std::vector<Monomial> out;
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j) out.push_back(Monomial{i, j, d - i - j});
  std::sort(out.begin(), out.end(), GrevlexGreater{});
  return out;
}

/// Extends f order by order so that (P, e_x), (Q, e_y), (R, e_z) stay tangent:
/// at each order m the degree-m coefficients solve one combined linear system
/// from all three identities at truncation m-1.
template <Scalar S>
Jet<S> complete_series(const Jet<S>& f, const Matrix4<S>& p, const Matrix4<S>& q, const Matrix4<S>& r, int target) {
  std::array<AffineVectorField<S>, 3> fields;
  const std::array<const Matrix4<S>*, 3> mats{&p, &q, &r};
  for (int k = 0; k < 3; ++k) {
    fields[k].A = *mats[k];
    fields[k].v[k] = S(Rational(1));
  }
  Poly<S> g = f.poly();
  for (int m = f.order() + 1; m <= target; ++m) {
    auto mons = monomials_of_degree(m);
    std::vector<std::string> names;
    for (const auto& mon : mons) names.push_back(g.monomial_str(mon));
    LinearSystem<S> sys(names);
    for (const auto& field : fields) {
      Poly<S> base = tangency_residual_poly(g, field, m - 1);
      std::vector<Poly<S>> delta;
      for (const auto& mon : mons) {
        Poly<S> shifted = g + Poly<S>::term(g.vars(), mon, S(Rational(1)));
        delta.push_back(tangency_residual_poly(shifted, field, m - 1) - base);
      }
      std::map<Monomial, std::size_t, GrevlexGreater> seen;
      std::vector<Monomial> eqs;
      for (const auto& [mon, c] : base.terms())
        if (seen.emplace(mon, eqs.size()).second) eqs.push_back(mon);
      for (const auto& d : delta)
        for (const auto& [mon, c] : d.terms())
          if (seen.emplace(mon, eqs.size()).second) eqs.push_back(mon);
      for (const auto& mon : eqs) {
        std::vector<S> row;
        for (const auto& d : delta) row.push_back(d.coeff(mon));
        sys.add(std::move(row), -base.coeff(mon));
      }
    }
    auto fam = linear_solve(sys);
    if (!fam) throw CompletionError(CompletionError::Kind::Inconsistent, m);
    if (fam->dimension() != 0) throw CompletionError(CompletionError::Kind::Underdetermined, m);
    for (std::size_t k = 0; k < mons.size(); ++k) g.add_term(mons[k], fam->particular[k]);
  }
  return Jet<S>(g, target);
}

/// Symmetry algebra of a jet as computed by full_algebra.
template <Scalar S>
struct SymmetryAlgebra {
  std::vector<AffineVectorField<S>> basis;
  std::vector<AffineVectorField<S>> isotropy;
  int order = 0;
  int truncation = 0;
  bool closed = false;
  bool isotropy_verified = false;
  std::vector<std::pair<std::size_t, std::size_t>> failed_brackets;

  std::size_t full_dim() const { return basis.size(); }
  std::size_t isotropy_dim() const { return isotropy.size(); }
};

/// True when `field` lies in the span of `basis`.
template <Scalar S>
bool in_span(const std::vector<AffineVectorField<S>>& basis, const AffineVectorField<S>& field) {
  std::vector<std::vector<S>> m;
  for (const auto& b : basis) m.push_back(b.coords());
  std::size_t r0 = rank(m);
  m.push_back(field.coords());
  return rank(m) == r0;
}

/// Affine symmetries of the jet F (order N): tangency with free translation at
/// truncation N-1, exact bracket closure of the resulting space, and the
/// translation-free part re-checked at truncation N.
template <Scalar S>
SymmetryAlgebra<S> full_algebra(const Jet<S>& f) {
  if (f.order() < 2) throw Error("full_algebra needs a jet of order >= 2");
  SymmetryAlgebra<S> alg;
  alg.order = f.order();
  auto fam = solve_tangency(f, Translation<S>::free(), {}, "a");
  alg.truncation = fam->truncation;
  alg.basis = fam->homogeneous_basis();

  // closure: reduce every bracket against the row-reduced basis
  std::vector<std::vector<S>> m;
  for (const auto& b : alg.basis) m.push_back(b.coords());
  std::size_t r0 = rank(m);
  alg.closed = true;
  for (std::size_t i = 0; i < alg.basis.size(); ++i)
    for (std::size_t j = i + 1; j < alg.basis.size(); ++j) {
      auto br = bracket(alg.basis[i], alg.basis[j]);
      if (br.is_zero_field()) continue;
      auto mm = m;
      mm.push_back(br.coords());
      if (rank(mm) != r0) {
        alg.closed = false;
        alg.failed_brackets.emplace_back(i, j);
      }
    }

  // isotropy: combinations with zero spatial translation
  LinearSystem<S> iso;
  for (std::size_t k = 0; k < alg.basis.size(); ++k) iso.unknowns.push_back("c" + std::to_string(k));
  for (int t = 0; t < 4; ++t) {
    std::vector<S> row;
    for (const auto& b : alg.basis) row.push_back(b.v[t]);
    iso.add(std::move(row), S(Rational(0)));
  }
  auto iso_fam = linear_solve(iso);
  for (const auto& coeffs : iso_fam->basis) {
    AffineVectorField<S> g;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (!is_zero(coeffs[k])) g = g + alg.basis[k].scaled(coeffs[k]);
    alg.isotropy.push_back(g);
  }
  alg.isotropy_verified = true;
  for (const auto& g : alg.isotropy)
    if (!tangency_residual(f, g, f.order()).is_zero()) alg.isotropy_verified = false;
  return alg;
}

/// Indices of basis fields that are not tangent to the jet at truncation m.
template <Scalar S>
std::vector<std::size_t> invariance_failures(const std::vector<AffineVectorField<S>>& fields, const Jet<S>& f, int m) {
  std::vector<std::size_t> bad;
  for (std::size_t k = 0; k < fields.size(); ++k)
    if (!tangency_residual_poly(f.poly(), fields[k], m).is_zero()) bad.push_back(k);
  return bad;
}

/// Higher-order terms of degrees base.order()+1 .. order compatible with a
/// linear isotropy generator (A with A[i][3] = 0 for i < 3), as a family over
/// the unknown coefficients.
template <Scalar S>
SolutionFamily<S> isotropy_constrained_terms(const Jet<S>& base, const Matrix4<S>& generator, int order) {
  for (int i = 0; i < 3; ++i)
    if (!is_zero(generator[i][3])) throw Error("generator must not mix w into x, y, z");
  AffineVectorField<S> g;
  g.A = generator;
  std::vector<Monomial> mons;
  for (int d = base.order() + 1; d <= order; ++d)
    for (const auto& m : monomials_of_degree(d)) mons.push_back(m);
  std::vector<std::string> names;
  for (const auto& m : mons) names.push_back("c" + std::to_string(m[0]) + std::to_string(m[1]) + std::to_string(m[2]));
  Poly<S> f = base.poly();
  Poly<S> r0 = tangency_residual_poly(f, g, order);
  std::vector<Poly<S>> delta;
  for (const auto& m : mons)
    delta.push_back(tangency_residual_poly(f + Poly<S>::term(f.vars(), m, S(Rational(1))), g, order) - r0);
  std::map<Monomial, int, GrevlexGreater> eqs;
  for (const auto& [m, c] : r0.terms()) eqs[m] = 0;
  for (const auto& d : delta)
    for (const auto& [m, c] : d.terms()) eqs[m] = 0;
  LinearSystem<S> sys(names);
  for (const auto& [m, unused] : eqs) {
    std::vector<S> row;
    for (const auto& d : delta) row.push_back(d.coeff(m));
    sys.add(std::move(row), -r0.coeff(m));
  }
  auto fam = linear_solve(sys);
  if (!fam) throw Error("base jet is not invariant under the generator");
  return *fam;
}

}  // namespace affhom
