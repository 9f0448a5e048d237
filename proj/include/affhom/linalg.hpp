#pragma once

#include "affhom/scalar.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace affhom {

/// Linear equations sum_j row[j]*u_j = rhs over named unknowns.
template <Scalar S>
struct LinearSystem {
  std::vector<std::string> unknowns;
  std::vector<std::vector<S>> rows;
  std::vector<S> rhs;

  LinearSystem() = default;
  explicit LinearSystem(std::vector<std::string> names) : unknowns(std::move(names)) {}

  std::size_t num_unknowns() const { return unknowns.size(); }
  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < unknowns.size(); ++i)
      if (unknowns[i] == name) return i;
    throw Error("unknown '" + name + "' not in system");
  }
  void add(std::vector<S> row, S r) {
    row.resize(unknowns.size(), S(Rational(0)));
    rows.push_back(std::move(row));
    rhs.push_back(std::move(r));
  }
  /// Equation given sparsely by unknown name.
  void add(const std::map<std::string, S>& coeffs, S r) {
    std::vector<S> row(unknowns.size(), S(Rational(0)));
    for (const auto& [n, c] : coeffs) row[index_of(n)] = c;
    add(std::move(row), std::move(r));
  }
  void fix(const std::string& name, S value) { add({{name, S(Rational(1))}}, std::move(value)); }
  void append(const LinearSystem& o) {
    for (std::size_t i = 0; i < o.rows.size(); ++i) {
      std::vector<S> row(unknowns.size(), S(Rational(0)));
      for (std::size_t j = 0; j < o.unknowns.size(); ++j) row[index_of(o.unknowns[j])] = o.rows[i][j];
      add(std::move(row), o.rhs[i]);
    }
  }
};

/// particular + span(basis); free_unknowns[k] is the coordinate set to 1 in basis[k].
template <Scalar S>
struct SolutionFamily {
  std::vector<std::string> unknowns;
  std::vector<S> particular;
  std::vector<std::vector<S>> basis;
  std::vector<std::size_t> free_unknowns;
  std::vector<std::size_t> pivots;
  std::vector<std::string> degeneracies;

  std::size_t dimension() const { return basis.size(); }
  std::vector<std::string> free_names() const {
    std::vector<std::string> r;
    for (auto i : free_unknowns) r.push_back(unknowns[i]);
    return r;
  }
  std::vector<S> member(const std::vector<S>& params) const {
    std::vector<S> x = particular;
    for (std::size_t k = 0; k < basis.size() && k < params.size(); ++k)
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = x[j] + params[k] * basis[k][j];
    return x;
  }
  const S& value(const std::string& name) const {
    for (std::size_t i = 0; i < unknowns.size(); ++i)
      if (unknowns[i] == name) return particular[i];
    throw Error("unknown '" + name + "' not in family");
  }
};

/// Row-reduces in place to reduced row-echelon form, scanning columns left to
/// right and choosing the pivot row with the smallest coefficient bit size.
/// Returns pivot columns; `aug` (may be empty) is transformed alongside.
template <Scalar S>
std::vector<std::size_t> rref(std::vector<std::vector<S>>& m, std::vector<S>* aug = nullptr,
                              std::vector<std::string>* degeneracies = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t ncols = m.empty() ? 0 : m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t best = m.size();
    std::size_t best_size = 0;
    for (std::size_t i = r; i < m.size(); ++i) {
      if (is_zero(m[i][c])) continue;
      std::size_t sz = bit_size(m[i][c]);
      if (best == m.size() || sz < best_size) {
        best = i;
        best_size = sz;
      }
    }
    if (best == m.size()) continue;
    std::swap(m[r], m[best]);
    if (aug) std::swap((*aug)[r], (*aug)[best]);
    if (degeneracies) {
      if (auto cond = degeneracy_condition(m[r][c])) degeneracies->push_back(*cond);
    }
    S inv = S(Rational(1)) / m[r][c];
    for (std::size_t j = c; j < ncols; ++j)
      if (!is_zero(m[r][j])) m[r][j] = m[r][j] * inv;
    if (aug) (*aug)[r] = (*aug)[r] * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      S f = m[i][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (!is_zero(m[r][j])) m[i][j] = m[i][j] - f * m[r][j];
      if (aug) (*aug)[i] = (*aug)[i] - f * (*aug)[r];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Exact solve; nullopt when the system is inconsistent.
template <Scalar S>
std::optional<SolutionFamily<S>> linear_solve(const LinearSystem<S>& sys) {
  std::vector<std::vector<S>> m = sys.rows;
  std::vector<S> b = sys.rhs;
  const std::size_t n = sys.unknowns.size();
  SolutionFamily<S> fam;
  fam.unknowns = sys.unknowns;
  fam.pivots = rref(m, &b, &fam.degeneracies);
  for (std::size_t i = fam.pivots.size(); i < m.size(); ++i)
    if (!is_zero(b[i])) return std::nullopt;
  std::set<std::size_t> pivot_set(fam.pivots.begin(), fam.pivots.end());
  fam.particular.assign(n, S(Rational(0)));
  for (std::size_t k = 0; k < fam.pivots.size(); ++k) fam.particular[fam.pivots[k]] = b[k];
  for (std::size_t f = 0; f < n; ++f) {
    if (pivot_set.count(f)) continue;
    std::vector<S> v(n, S(Rational(0)));
    v[f] = S(Rational(1));
    for (std::size_t k = 0; k < fam.pivots.size(); ++k)
      if (!is_zero(m[k][f])) v[fam.pivots[k]] = -m[k][f];
    fam.free_unknowns.push_back(f);
    fam.basis.push_back(std::move(v));
  }
  return fam;
}

template <Scalar S>
std::size_t rank(std::vector<std::vector<S>> m) {
  return rref(m).size();
}

/// Basis of {x : m x = 0}.
template <Scalar S>
std::vector<std::vector<S>> nullspace(const std::vector<std::vector<S>>& m, std::size_t ncols) {
  LinearSystem<S> sys;
  for (std::size_t j = 0; j < ncols; ++j) sys.unknowns.push_back("u" + std::to_string(j));
  for (const auto& row : m) sys.add(row, S(Rational(0)));
  return linear_solve(sys)->basis;
}

}  // namespace affhom
