#include "affhom/normalize.hpp"

#include "affhom/expand.hpp"

namespace affhom {

std::string to_string(Signature s) {
  switch (s) {
    case Signature::Hyperbolic: return "hyperbolic";
    case Signature::Elliptic: return "elliptic";
    case Signature::Other: return "other";
  }
  return "?";
}

std::string to_string(CubicType t) {
  switch (t) {
    case CubicType::Zero: return "Zero";
    case CubicType::I3: return "I3";
    case CubicType::I2: return "I2";
    case CubicType::I1: return "I1";
    case CubicType::I0: return "I0";
  }
  return "?";
}

std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::PureRescaling: return "pure-rescaling";
    case GeneratorKind::Scaling: return "scaling";
    case GeneratorKind::NullRotation: return "null-rotation";
  }
  return "?";
}

namespace {

using Vec3 = std::array<Rational, 3>;

Rational bilinear(const Matrix3<Rational>& h, const Vec3& a, const Vec3& b) {
  Rational s(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a[i] * h[i][j] * b[j];
  return s;
}

// h-orthogonal basis with q(v_k) = a_k != 0
std::pair<std::vector<Vec3>, std::vector<Rational>> diagonalize(const Matrix3<Rational>& h) {
  std::vector<Vec3> rest{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  std::vector<Vec3> basis;
  std::vector<Rational> diag;
  while (!rest.empty()) {
    std::optional<std::size_t> pick;
    for (std::size_t k = 0; k < rest.size() && !pick; ++k)
      if (!bilinear(h, rest[k], rest[k]).is_zero()) pick = k;
    if (!pick) {
      for (std::size_t i = 0; i < rest.size() && !pick; ++i)
        for (std::size_t j = i + 1; j < rest.size() && !pick; ++j) {
          Vec3 s{rest[i][0] + rest[j][0], rest[i][1] + rest[j][1], rest[i][2] + rest[j][2]};
          if (!bilinear(h, s, s).is_zero()) {
            rest[i] = s;
            pick = i;
          }
        }
    }
    if (!pick) throw DegenerateError("degenerate quadratic part");
    Vec3 v = rest[*pick];
    rest.erase(rest.begin() + static_cast<long>(*pick));
    Rational a = bilinear(h, v, v);
    for (auto& w : rest) {
      Rational f = bilinear(h, w, v) / a;
      for (int i = 0; i < 3; ++i) w[i] -= f * v[i];
    }
    basis.push_back(v);
    diag.push_back(a);
  }
  return {basis, diag};
}

bool is_square(const Rational& r) { return r.sign() >= 0 && r.root(2).has_value(); }

}  // namespace

QuadraticNormalization normalize_quadratic(const Jet<Rational>& j, Field field) {
  const VarList& vars = j.poly().vars();
  if (!j.poly().coeff(Monomial(3)).is_zero()) throw Error("graph jet has a constant term");
  std::array<Rational, 3> lin;
  Poly<Rational> f1 = j.poly();
  for (int k = 0; k < 3; ++k) {
    lin[k] = j.poly().coeff(Monomial::unit(3, static_cast<std::size_t>(k)));
    f1 -= Poly<Rational>::variable(vars, static_cast<std::size_t>(k)).scaled(lin[k]);
  }
  Matrix3<Rational> h = gram_matrix(f1);
  auto [vs, a] = diagonalize(h);
  int positive = 0;
  for (const auto& x : a) positive += x.sign() > 0 ? 1 : 0;
  Signature sig = (positive == 0 || positive == 3) ? Signature::Elliptic : Signature::Hyperbolic;
  bool elliptic_target = field == Field::Real && sig == Signature::Elliptic;

  Tower tower;
  auto root = [&](const Rational& d) {
    auto [t, s] = sqrt_in_tower(d, tower);
    tower = t;
    return s;
  };
  // C maps new (X, Y, Z) to the diagonal coordinates u
  Matrix3<QuadExt> c;
  for (auto& row : c) row.fill(QuadExt(0));
  Rational kappa;
  if (!elliptic_target) {
    // pair (i, j) with -a_j/a_i, Z from u_k; prefer rational square roots
    std::optional<std::array<int, 3>> choice;
    for (int pass = 0; pass < 2 && !choice; ++pass)
      for (int k = 2; k >= 0 && !choice; --k)
        for (int i = 0; i < 3 && !choice; ++i)
          for (int jj = 0; jj < 3 && !choice; ++jj) {
            if (i == k || jj == k || i == jj) continue;
            Rational ratio = -a[jj] / a[i];
            if (field == Field::Real && ratio.sign() < 0) continue;
            if (pass == 0 && !is_square(ratio)) continue;
            choice = std::array<int, 3>{i, jj, k};
          }
    if (!choice) throw Error("quadratic part admits no hyperbolic normal form");
    auto [i, jj, k] = *choice;
    kappa = a[k];
    QuadExt s = root(-a[jj] / a[i]);
    QuadExt two_k_over_a(Rational(2) * kappa / a[i]);
    // u_i = (X + (2k/a_i) Y)/2, u_j = ((2k/a_i) Y - X)/(2s), u_k = Z
    c[i][0] = QuadExt(Rational(1, 2));
    c[i][1] = two_k_over_a * QuadExt(Rational(1, 2));
    QuadExt inv2s = QuadExt(1) / (QuadExt(2) * s);
    c[jj][0] = -inv2s;
    c[jj][1] = two_k_over_a * inv2s;
    c[k][2] = QuadExt(1);
  } else {
    int k = 2;
    kappa = a[k];
    for (int i = 0; i < 2; ++i) {
      QuadExt s = root(a[i] / kappa);
      c[i][i] = QuadExt(1) / s;
    }
    c[k][k] = QuadExt(1);
  }

  Matrix3<QuadExt> m;
  for (int r = 0; r < 3; ++r)
    for (int col = 0; col < 3; ++col) {
      QuadExt acc(0);
      for (int t = 0; t < 3; ++t) acc = acc + QuadExt(vs[t][r]) * c[t][col];
      m[r][col] = acc;
    }
  Jet<QuadExt> lifted(lift<QuadExt>(f1), j.order());
  Jet<QuadExt> out = compose_linear(lifted, m).scaled(QuadExt(kappa.inverse()));

  QuadraticNormalization res;
  res.jet = out;
  res.tower = tower;
  res.map = AffineMap<QuadExt>::identity();
  for (int r = 0; r < 3; ++r)
    for (int col = 0; col < 3; ++col) res.map.linear[r][col] = m[r][col];
  for (int col = 0; col < 3; ++col) {
    QuadExt acc(0);
    for (int t = 0; t < 3; ++t) acc = acc + QuadExt(lin[t]) * m[t][col];
    res.map.linear[3][col] = acc;
  }
  res.map.linear[3][3] = QuadExt(kappa);
  res.form.signature = sig;
  for (auto& row : res.form.gram) row.fill(QuadExt(0));
  if (elliptic_target) {
    for (int i = 0; i < 3; ++i) res.form.gram[i][i] = QuadExt(1);
  } else {
    res.form.gram[0][1] = res.form.gram[1][0] = res.form.gram[2][2] = QuadExt(1);
  }
  if (!(gram_matrix(out.poly()) == res.form.gram)) throw Error("internal: quadratic normalization failed");
  return res;
}

Poly<Rational> trace_free_cubic(const Jet<Rational>& j) {
  Matrix3<Rational> h = gram_matrix(j.poly());
  return trace_decompose(j.poly().homogeneous_part(3), h).first;
}

CubicType jet_cubic_type(const Jet<Rational>& j) {
  Matrix3<Rational> h = gram_matrix(j.poly());
  return cubic_type(trace_decompose(j.poly().homogeneous_part(3), h).first, h);
}

std::vector<Poly<Rational>> trace_free_basis() {
  std::vector<Poly<Rational>> b;
  for (const char* t : {"x^3", "x^2*z", "x^2*y - 2*x*z^2", "3*x*y*z - z^3", "x*y^2 - 2*y*z^2", "y^2*z", "y^3"})
    b.push_back(parse_jet(t, 3).poly());
  return b;
}

IsotropyGenerator classify_isotropy_generator(const Matrix4<Rational>& g) {
  IsotropyGenerator out;
  out.t = g[2][2];
  out.r = out.t - g[0][0];
  out.p = g[0][2];
  out.q = g[2][0];
  bool shape = g[1][1] == out.t + out.r && g[1][2] == -out.q && g[2][1] == -out.p && g[3][3] == Rational(2) * out.t;
  for (auto [i, j] : {std::pair{0, 1}, {0, 3}, {1, 0}, {1, 3}, {2, 3}, {3, 0}, {3, 1}, {3, 2}})
    shape = shape && g[i][j].is_zero();
  if (!shape) throw Error("matrix is not an isotropy generator of the o(3) + rescaling shape");
  out.norm = Rational(2) * out.p * out.q + out.r * out.r;
  if (out.p.is_zero() && out.q.is_zero() && out.r.is_zero()) {
    if (out.t.is_zero()) throw Error("zero generator");
    out.kind = GeneratorKind::PureRescaling;
    out.normalized_t = QuadExt(Rational(1));
  } else if (!out.norm.is_zero()) {
    out.kind = GeneratorKind::Scaling;
    auto [tower, s] = sqrt_in_tower(out.norm, Tower{});
    out.normalized_t = QuadExt(out.t) / s;
  } else {
    out.kind = GeneratorKind::NullRotation;
    out.normalized_t = QuadExt(out.t);
  }
  return out;
}

Matrix4<Rational> generator_matrix(GeneratorKind kind, const Rational& t) {
  Matrix4<Rational> m = zero_matrix<Rational>();
  switch (kind) {
    case GeneratorKind::PureRescaling:
      m = diagonal<Rational>({Rational(1), Rational(1), Rational(1), Rational(2)});
      break;
    case GeneratorKind::Scaling:
      m = diagonal<Rational>({t - Rational(1), t + Rational(1), t, Rational(2) * t});
      break;
    case GeneratorKind::NullRotation:
      m = diagonal<Rational>({t, t, t, Rational(2) * t});
      m[1][2] = Rational(-1);
      m[2][0] = Rational(1);
      break;
  }
  return m;
}

std::vector<std::vector<Rational>> cubic_action_matrix(GeneratorKind kind, const Rational& t) {
  Matrix4<Rational> g = generator_matrix(kind, t);
  auto basis = trace_free_basis();
  const VarList& vars = VarList::xyz();
  LinearSystem<Rational> coords({"b1", "b2", "b3", "b4", "b5", "b6", "b7"});
  std::map<Monomial, std::size_t, GrevlexGreater> mons;
  for (const auto& b : basis)
    for (const auto& [m, c] : b.terms()) mons.emplace(m, 0);
  std::vector<std::vector<Rational>> rows;
  for (const auto& b : basis) {
    Poly<Rational> image = b.scaled(-g[3][3]);
    for (std::size_t i = 0; i < 3; ++i) {
      Poly<Rational> comp(vars);
      for (std::size_t k = 0; k < 3; ++k)
        if (!g[i][k].is_zero()) comp += Poly<Rational>::variable(vars, k).scaled(g[i][k]);
      image += comp * b.partial(i);
    }
    LinearSystem<Rational> sys({"b1", "b2", "b3", "b4", "b5", "b6", "b7"});
    std::map<Monomial, int, GrevlexGreater> all;
    for (const auto& bb : basis)
      for (const auto& [m, c] : bb.terms()) all[m] = 0;
    for (const auto& [m, c] : image.terms()) all[m] = 0;
    for (const auto& [m, unused] : all) {
      std::vector<Rational> row;
      for (const auto& bb : basis) row.push_back(bb.coeff(m));
      sys.add(std::move(row), image.coeff(m));
    }
    auto fam = linear_solve(sys);
    if (!fam) throw Error("internal: generator does not preserve trace-free cubics");
    rows.push_back(fam->particular);
  }
  return rows;
}

std::vector<std::vector<Rational>> admissible_cubics(GeneratorKind kind, const Rational& t) {
  auto m = cubic_action_matrix(kind, t);
  // c is admissible when sum_i c_i row_i = 0
  std::vector<std::vector<Rational>> mt(7, std::vector<Rational>(7, Rational(0)));
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) mt[j][i] = m[i][j];
  return nullspace(mt, 7);
}

std::vector<ConstrainedCubic> constrained_cubics(GeneratorKind kind) {
  std::vector<ConstrainedCubic> out;
  if (kind == GeneratorKind::PureRescaling) return out;
  std::vector<long> ts;
  if (kind == GeneratorKind::Scaling)
    ts = {-3, -2, -1, 0, 1, 2, 3};
  else
    ts = {0};
  for (long t : ts)
    for (auto& ray : admissible_cubics(kind, Rational(t))) out.push_back({Rational(t), ray});
  return out;
}

}  // namespace affhom
