#pragma once

#include "affhom/poly.hpp"
#include "affhom/rational.hpp"
#include "affhom/serialize.hpp"

#include <map>
#include <string>
#include <vector>

namespace affhom {

enum class TermOrder { Grevlex, Lex };

using QPoly = Poly<Rational>;

/// Reduced Groebner basis (monic, inter-reduced, sorted by descending leading
/// monomial) of the ideal generated by `gens`. Variable 0 is the largest.
std::vector<QPoly> buchberger(const std::vector<QPoly>& gens, TermOrder order = TermOrder::Grevlex);

/// Full normal form of p modulo `basis` (a Groebner basis for `order`).
QPoly reduce(const QPoly& p, const std::vector<QPoly>& basis, TermOrder order = TermOrder::Grevlex);

/// S-polynomial of f and g for the order.
QPoly s_polynomial(const QPoly& f, const QPoly& g, TermOrder order = TermOrder::Grevlex);

/// Leading monomial for the order.
Monomial leading_monomial(const QPoly& p, TermOrder order);

/// Rational roots of a univariate polynomial given by coefficients (low
/// degree first), with multiplicity removed.
std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs);

struct SolutionFamilyQ {
  std::vector<std::string> free;          // free unknowns
  std::map<std::string, QPoly> assignments;  // every unknown, polynomial in the free ones
};

struct ResidualComponent {
  std::vector<QPoly> basis;
  std::map<std::string, QPoly> partial;  // unknowns already solved on this branch
};

struct SolutionSet {
  VarList ring;
  std::vector<std::map<std::string, Rational>> points;
  std::vector<SolutionFamilyQ> families;
  std::vector<ResidualComponent> residual;

  Json to_json() const;
};

/// Exact solution of a polynomial system: recursive splitting on linear
/// eliminators, rational roots of univariate elements and monomial factors,
/// with Groebner bases at every node. Points and families are verified
/// against the generators before being returned.
SolutionSet solve_zero_dim(const std::vector<QPoly>& gens);

}  // namespace affhom
