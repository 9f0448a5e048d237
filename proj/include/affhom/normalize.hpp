#pragma once

#include "affhom/jet.hpp"
#include "affhom/linalg.hpp"
#include "affhom/quadext.hpp"
#include "affhom/symmetry.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace affhom {

template <class T>
using Matrix3 = std::array<std::array<T, 3>, 3>;

enum class Field { Complex, Real };
enum class Signature { Hyperbolic, Elliptic, Other };
std::string to_string(Signature s);

template <Scalar S>
struct QuadraticForm {
  Matrix3<S> gram;
  Signature signature = Signature::Other;
};

/// Coordinate change old = linear * new + translation on (x, y, z, w).
template <Scalar S>
struct AffineMap {
  Matrix4<S> linear;
  std::array<S, 4> translation;

  static AffineMap identity() {
    AffineMap m;
    m.linear = zero_matrix<S>();
    for (int i = 0; i < 4; ++i) m.linear[i][i] = S(Rational(1));
    m.translation.fill(S(Rational(0)));
    return m;
  }
  /// this after `inner`: old = this(inner(new)).
  AffineMap then(const AffineMap& inner) const {
    AffineMap r;
    r.linear = matmul(linear, inner.linear);
    for (int i = 0; i < 4; ++i) {
      S acc = translation[i];
      for (int k = 0; k < 4; ++k) acc = acc + linear[i][k] * inner.translation[k];
      r.translation[i] = acc;
    }
    return r;
  }
};

template <Scalar S>
Matrix3<S> inverse3(const Matrix3<S>& m) {
  std::vector<std::vector<S>> a(3, std::vector<S>(6, S(Rational(0))));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a[i][j] = m[i][j];
    a[i][3 + i] = S(Rational(1));
  }
  for (int c = 0; c < 3; ++c) {
    int p = c;
    while (p < 3 && is_zero(a[p][c])) ++p;
    if (p == 3) throw DegenerateError("singular matrix");
    std::swap(a[p], a[c]);
    S inv = S(Rational(1)) / a[c][c];
    for (auto& x : a[c]) x = x * inv;
    for (int r = 0; r < 3; ++r) {
      if (r == c || is_zero(a[r][c])) continue;
      S f = a[r][c];
      for (int k = 0; k < 6; ++k) a[r][k] = a[r][k] - f * a[c][k];
    }
  }
  Matrix3<S> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = a[i][3 + j];
  return out;
}

/// Symmetric Gram matrix of the degree-2 part: q = sum h_ij x_i x_j.
template <Scalar S>
Matrix3<S> gram_matrix(const Poly<S>& p) {
  Matrix3<S> h;
  for (auto& row : h) row.fill(S(Rational(0)));
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() != 2) continue;
    std::vector<int> idx;
    for (int v = 0; v < 3; ++v)
      for (int k = 0; k < m[v]; ++k) idx.push_back(v);
    if (idx[0] == idx[1]) {
      h[idx[0]][idx[0]] = c;
    } else {
      S half = c * S(Rational(1, 2));
      h[idx[0]][idx[1]] = half;
      h[idx[1]][idx[0]] = half;
    }
  }
  return h;
}

template <Scalar S>
Poly<S> quadratic_poly(const Matrix3<S>& h, const VarList& vars = VarList::xyz()) {
  Poly<S> q(vars);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!is_zero(h[i][j])) {
        Monomial m(3);
        m[i] += 1;
        m[j] += 1;
        q.add_term(m, h[i][j]);
      }
  return q;
}

/// Fully symmetric tensor C_ijk of a cubic form sum C_ijk x_i x_j x_k.
template <Scalar S>
std::array<Matrix3<S>, 3> cubic_tensor(const Poly<S>& c) {
  std::array<Matrix3<S>, 3> t;
  for (auto& m : t)
    for (auto& row : m) row.fill(S(Rational(0)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Monomial m(3);
        m[i] += 1;
        m[j] += 1;
        m[k] += 1;
        S coeff = c.coeff(m);
        if (is_zero(coeff)) continue;
        // number of ordered index triples giving this monomial
        long perms = 6;
        for (int v = 0; v < 3; ++v) perms /= (m[v] == 3 ? 6 : m[v] == 2 ? 2 : 1);
        t[i][j][k] = coeff * S(Rational(1, perms));
      }
  return t;
}

/// Trace vector h^{jk} C_ijk.
template <Scalar S>
std::array<S, 3> cubic_trace(const Poly<S>& c, const Matrix3<S>& h) {
  auto t = cubic_tensor(c);
  auto hinv = inverse3(h);
  std::array<S, 3> out{S(Rational(0)), S(Rational(0)), S(Rational(0))};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (!is_zero(hinv[j][k])) out[i] = out[i] + hinv[j][k] * t[i][j][k];
  return out;
}

template <Scalar S>
bool is_trace_free(const Poly<S>& c, const Matrix3<S>& h) {
  for (const auto& x : cubic_trace(c, h))
    if (!is_zero(x)) return false;
  return true;
}

/// Unique c = c0 + q * l with c0 trace-free for q = x^T h x; returns (c0, l).
template <Scalar S>
std::pair<Poly<S>, Poly<S>> trace_decompose(const Poly<S>& c, const Matrix3<S>& h) {
  const VarList& vars = c.vars();
  Poly<S> q = quadratic_poly(h, vars);
  auto target = cubic_trace(c, h);
  // trace of q * x_m is linear in m; solve for the coefficients of l
  LinearSystem<S> sys({"l1", "l2", "l3"});
  std::array<std::array<S, 3>, 3> cols;
  for (int m = 0; m < 3; ++m) cols[m] = cubic_trace(q * Poly<S>::variable(vars, m), h);
  for (int i = 0; i < 3; ++i) sys.add(std::vector<S>{cols[0][i], cols[1][i], cols[2][i]}, target[i]);
  auto fam = linear_solve(sys);
  if (!fam || fam->dimension() != 0) throw DegenerateError("trace decomposition is not unique");
  Poly<S> l(vars);
  for (int m = 0; m < 3; ++m) l += Poly<S>::variable(vars, m).scaled(fam->particular[m]);
  return {c - q * l, l};
}

/// J = C_ijk C_lmn h^il h^jm h^kn.
template <Scalar S>
S pick_invariant(const Poly<S>& c0, const Matrix3<S>& h) {
  auto t = cubic_tensor(c0);
  auto hi = inverse3(h);
  // raise all three indices: U^{lmn} = h^{li} h^{mj} h^{nk} C_ijk
  std::array<Matrix3<S>, 3> up = t;
  for (int l = 0; l < 3; ++l)
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        S acc(Rational(0));
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
              if (!is_zero(t[i][j][k])) acc = acc + hi[l][i] * hi[m][j] * hi[n][k] * t[i][j][k];
        up[l][m][n] = acc;
      }
  S j(Rational(0));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int d = 0; d < 3; ++d) j = j + t[a][b][d] * up[a][b][d];
  return j;
}

/// Dimension of the span of the three first partials.
template <Scalar S>
int partials_rank(const Poly<S>& c) {
  std::vector<Poly<S>> parts;
  for (std::size_t v = 0; v < 3; ++v) parts.push_back(c.partial(v));
  std::map<Monomial, std::size_t, GrevlexGreater> cols;
  for (const auto& p : parts)
    for (const auto& [m, k] : p.terms()) cols.emplace(m, cols.size());
  std::vector<std::vector<S>> rows;
  for (const auto& p : parts) {
    std::vector<S> r(cols.size(), S(Rational(0)));
    for (const auto& [m, k] : p.terms()) r[cols.at(m)] = k;
    rows.push_back(std::move(r));
  }
  return static_cast<int>(rank(rows));
}

enum class CubicType { Zero, I3, I2, I1, I0 };
std::string to_string(CubicType t);

template <Scalar S>
CubicType cubic_type(const Poly<S>& c0, const Matrix3<S>& h) {
  if (!is_trace_free(c0, h)) throw Error("cubic_type needs a trace-free cubic");
  if (c0.is_zero()) return CubicType::Zero;
  int d = partials_rank(c0);
  if (d == 1) return CubicType::I3;
  if (d == 2) return CubicType::I2;
  return is_zero(pick_invariant(c0, h)) ? CubicType::I1 : CubicType::I0;
}

/// Graph jet after the linear change x_old = M x_new with w untouched.
template <Scalar S>
Jet<S> compose_linear(const Jet<S>& f, const Matrix3<S>& m) {
  const VarList& vars = f.poly().vars();
  std::vector<Poly<S>> images;
  for (int i = 0; i < 3; ++i) {
    Poly<S> im(vars);
    for (int j = 0; j < 3; ++j)
      if (!is_zero(m[i][j])) im += Poly<S>::variable(vars, j).scaled(m[i][j]);
    images.push_back(im);
  }
  return Jet<S>(f.poly().compose(images, f.order()), f.order());
}

/// Shear x_i -> x_i + a_i w killing the trace part of the cubic; solves
/// w = F(x + a w) by fixed-point iteration.
template <Scalar S>
std::pair<Jet<S>, AffineMap<S>> normal_shear(const Jet<S>& j) {
  const Poly<S>& f = j.poly();
  const VarList& vars = f.vars();
  Matrix3<S> h = gram_matrix(f);
  auto [c0, l] = trace_decompose(f.homogeneous_part(3), h);
  auto hinv = inverse3(h);
  std::array<S, 3> a;
  for (int i = 0; i < 3; ++i) {
    S acc(Rational(0));
    for (int k = 0; k < 3; ++k) acc = acc + hinv[i][k] * l.coeff(Monomial::unit(3, static_cast<std::size_t>(k)));
    a[i] = acc * S(Rational(-1, 2));
  }
  AffineMap<S> map = AffineMap<S>::identity();
  for (int i = 0; i < 3; ++i) map.linear[i][3] = a[i];
  Poly<S> w = f;
  for (int it = 0; it < j.order(); ++it) {
    std::vector<Poly<S>> images;
    for (int i = 0; i < 3; ++i) images.push_back(Poly<S>::variable(vars, i) + w.scaled(a[i]));
    w = f.compose(images, j.order());
  }
  return {Jet<S>(w, j.order()), map};
}

/// Result of bringing a graph jet to 2xy + z^2 (or x^2 + y^2 + z^2) form.
struct QuadraticNormalization {
  Jet<QuadExt> jet;
  AffineMap<QuadExt> map;
  QuadraticForm<QuadExt> form;
  Tower tower;
};

/// Removes linear terms, then brings the quadratic part to 2xy + z^2
/// (complex, real indefinite) or x^2 + y^2 + z^2 (real definite) using a
/// rescaling of w and at most two square roots.
QuadraticNormalization normalize_quadratic(const Jet<Rational>& j, Field field);

/// Trace-free cubic part of a graph jet relative to its own quadratic part,
/// after removing linear terms; needs no field extension.
Poly<Rational> trace_free_cubic(const Jet<Rational>& j);
CubicType jet_cubic_type(const Jet<Rational>& j);

/// The seven trace-free basis cubics for 2xy + z^2.
std::vector<Poly<Rational>> trace_free_basis();

enum class GeneratorKind { PureRescaling, Scaling, NullRotation };
std::string to_string(GeneratorKind k);

struct IsotropyGenerator {
  GeneratorKind kind;
  Rational p, q, r, t;
  Rational norm;  // 2pq + r^2
  /// t after rescaling the o(3) part to diag(-1, 1, 0); needs sqrt(norm).
  std::optional<QuadExt> normalized_t;
};

/// Reads (p, q, r, t) from a matrix of the shape
/// [[t-r,0,p,0],[0,t+r,-q,0],[q,-p,t,0],[0,0,0,2t]].
IsotropyGenerator classify_isotropy_generator(const Matrix4<Rational>& g);

/// The generator normal forms: diag(1,1,1,2), the scaling form with
/// parameter t and the null-rotation form with parameter t.
Matrix4<Rational> generator_matrix(GeneratorKind kind, const Rational& t);

/// Matrix of c -> (g . grad) c - 2t c on the trace-free basis, with row i
/// holding the image of basis cubic i.
std::vector<std::vector<Rational>> cubic_action_matrix(GeneratorKind kind, const Rational& t);

/// Kernel of the action: the admissible cubics (as basis coordinates).
std::vector<std::vector<Rational>> admissible_cubics(GeneratorKind kind, const Rational& t);

struct ConstrainedCubic {
  Rational t;
  std::vector<Rational> ray;  // coordinates on trace_free_basis()
};

/// Scaling: every integer t in [-3, 3] with its kernel ray. Null rotation:
/// the single singular value t = 0.
std::vector<ConstrainedCubic> constrained_cubics(GeneratorKind kind);

}  // namespace affhom
