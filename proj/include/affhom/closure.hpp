#pragma once

#include "affhom/symmetry.hpp"

#include <string>
#include <vector>

namespace affhom {

enum class CaseId { NoCubic, I3, I2, I1, I0, Inr };

std::string to_string(CaseId c);
CaseId parse_case(const std::string& s);

/// Gauge fixing for P, Q, R as 1-based entries set to zero: (2,2) against
/// scaling isotropy, (2,3) against null rotations. Without cubic terms every
/// direction of o(3) + rescaling is fixed; I3 fixes both of its candidates.
std::vector<std::pair<int, int>> gauge_entries(CaseId c);

/// {p_ij = 0, q_ij = 0, r_ij = 0} for each of the case's gauge entries.
LinearSystem<Rational> normalize_PQR_constraints(CaseId c);

/// General member of a field family as a matrix over Q[free unknowns].
Matrix4<Poly<Rational>> family_matrix(const FieldFamily<Rational>& fam, const VarList& ring);

/// Closure equations: every coefficient of Tr^N[(f_x, f_y, f_z, -1) X (x, y, z, f)]
/// for the three closure matrices X, as polynomials in the free unknowns.
struct ClosureSystem {
  VarList ring;  // free unknowns, lexical order
  std::array<Matrix4<Poly<Rational>>, 3> pqr;
  std::vector<std::string> labels;
  std::vector<Poly<Rational>> equations;
};

ClosureSystem closure_constraints(const Jet<Rational>& f, const FieldFamily<Rational>& p,
                                  const FieldFamily<Rational>& q, const FieldFamily<Rational>& r);

/// Evaluates a family matrix at an assignment of the free unknowns.
Matrix4<Rational> evaluate_matrix(const Matrix4<Poly<Rational>>& m, const std::vector<Rational>& point);

}  // namespace affhom

#include "affhom/groebner.hpp"
#include "affhom/ratfunc.hpp"

namespace affhom {

/// (P, Q, R) at a rational solution point of a closure system.
std::array<Matrix4<Rational>, 3> point_pqr(const ClosureSystem& cs, const std::map<std::string, Rational>& point);

/// (P, Q, R) along a one-parameter family, over Q(t) with t its free unknown.
std::array<Matrix4<RatFunc>, 3> family_pqr(const ClosureSystem& cs, const SolutionFamilyQ& family);

/// A polynomial in one ring variable as an element of Q(t).
RatFunc to_ratfunc(const QPoly& p, std::size_t var);

}  // namespace affhom
