#include "affhom/closure.hpp"

#include <algorithm>
#include <set>

namespace affhom {

std::string to_string(CaseId c) {
  switch (c) {
    case CaseId::NoCubic: return "no-cubic";
    case CaseId::I3: return "I3";
    case CaseId::I2: return "I2";
    case CaseId::I1: return "I1";
    case CaseId::I0: return "I0";
    case CaseId::Inr: return "Inr";
  }
  return "?";
}

CaseId parse_case(const std::string& s) {
  for (CaseId c : {CaseId::NoCubic, CaseId::I3, CaseId::I2, CaseId::I1, CaseId::I0, CaseId::Inr})
    if (to_string(c) == s) return c;
  throw Error("unknown case '" + s + "'");
}

std::vector<std::pair<int, int>> gauge_entries(CaseId c) {
  switch (c) {
    case CaseId::Inr: return {{2, 3}};
    case CaseId::I3: return {{2, 2}, {2, 3}};
    case CaseId::NoCubic: return {{1, 3}, {2, 3}, {2, 2}, {3, 3}};
    default: return {{2, 2}};
  }
}

LinearSystem<Rational> normalize_PQR_constraints(CaseId c) {
  LinearSystem<Rational> sys;
  for (const char* prefix : {"p", "q", "r"})
    for (auto [i, j] : gauge_entries(c)) sys.unknowns.push_back(entry_name(prefix, i - 1, j - 1));
  for (std::size_t k = 0; k < sys.unknowns.size(); ++k) {
    std::vector<Rational> row(sys.unknowns.size(), Rational(0));
    row[k] = Rational(1);
    sys.add(std::move(row), Rational(0));
  }
  return sys;
}

Matrix4<Poly<Rational>> family_matrix(const FieldFamily<Rational>& fam, const VarList& ring) {
  Matrix4<Poly<Rational>> m;
  for (auto& row : m) row.fill(Poly<Rational>(ring));
  const auto& sol = fam.family;
  auto add_vector = [&](const std::vector<Rational>& vec, const Poly<Rational>& factor) {
    for (std::size_t k = 0; k < vec.size(); ++k) {
      if (vec[k].is_zero()) continue;
      AffineVectorField<Rational> probe;
      fam.place(probe, sol.unknowns[k], Rational(1));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          if (!probe.A[i][j].is_zero()) m[i][j] += factor.scaled(vec[k]);
    }
  };
  add_vector(sol.particular, Poly<Rational>::constant(ring, Rational(1)));
  auto names = sol.free_names();
  for (std::size_t b = 0; b < sol.basis.size(); ++b) {
    auto idx = ring.index_of(names[b]);
    if (!idx) throw Error("free unknown " + names[b] + " missing from ring");
    add_vector(sol.basis[b], Poly<Rational>::variable(ring, *idx));
  }
  return m;
}

ClosureSystem closure_constraints(const Jet<Rational>& f, const FieldFamily<Rational>& p,
                                  const FieldFamily<Rational>& q, const FieldFamily<Rational>& r) {
  std::set<std::string> names;
  for (const auto* fam : {&p, &q, &r})
    for (const auto& n : fam->free_names()) names.insert(n);
  ClosureSystem out;
  out.ring = VarList(std::vector<std::string>(names.begin(), names.end()));
  out.pqr = {family_matrix(p, out.ring), family_matrix(q, out.ring), family_matrix(r, out.ring)};
  auto xs = closure_matrices(out.pqr[0], out.pqr[1], out.pqr[2]);

  const int n = f.order();
  Matrix4<Poly<Rational>> unit_residuals;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      AffineVectorField<Rational> e;
      e.A[i][j] = Rational(1);
      unit_residuals[i][j] = tangency_residual_poly(f.poly(), e, n);
    }
  std::set<Monomial, GrevlexGreater> mons;
  for (const auto& row : unit_residuals)
    for (const auto& res : row)
      for (const auto& [m, c] : res.terms()) mons.insert(m);

  for (int k = 0; k < 3; ++k) {
    for (const auto& mon : mons) {
      Poly<Rational> eq(out.ring);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          Rational c = unit_residuals[i][j].coeff(mon);
          if (!c.is_zero()) eq += xs[k][i][j].scaled(c);
        }
      if (eq.is_zero()) continue;
      out.labels.push_back("X" + std::to_string(k + 1) + "[" + f.poly().monomial_str(mon) + "]");
      out.equations.push_back(std::move(eq));
    }
  }
  return out;
}

Matrix4<Rational> evaluate_matrix(const Matrix4<Poly<Rational>>& m, const std::vector<Rational>& point) {
  Matrix4<Rational> out = zero_matrix<Rational>();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = m[i][j].eval(point);
  return out;
}

}  // namespace affhom

namespace affhom {

std::array<Matrix4<Rational>, 3> point_pqr(const ClosureSystem& cs, const std::map<std::string, Rational>& point) {
  std::vector<Rational> values;
  for (const auto& name : cs.ring.names()) values.push_back(point.at(name));
  return {evaluate_matrix(cs.pqr[0], values), evaluate_matrix(cs.pqr[1], values), evaluate_matrix(cs.pqr[2], values)};
}

RatFunc to_ratfunc(const QPoly& p, std::size_t var) {
  std::vector<Rational> coeffs(static_cast<std::size_t>(std::max(p.degree(), 0)) + 1, Rational(0));
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t k = 0; k < m.size(); ++k)
      if (k != var && m[k]) throw Error("polynomial depends on more than the family parameter");
    coeffs[m[var]] = c;
  }
  return RatFunc(UPoly(coeffs), UPoly(Rational(1)));
}

std::array<Matrix4<RatFunc>, 3> family_pqr(const ClosureSystem& cs, const SolutionFamilyQ& family) {
  if (family.free.size() != 1) throw Error("family_pqr needs a one-parameter family");
  std::size_t var = *cs.ring.index_of(family.free.front());
  std::vector<QPoly> images;
  for (const auto& name : cs.ring.names()) images.push_back(family.assignments.at(name));
  std::array<Matrix4<RatFunc>, 3> out;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out[k][i][j] = to_ratfunc(cs.pqr[k][i][j].compose(images), var);
  return out;
}

}  // namespace affhom
