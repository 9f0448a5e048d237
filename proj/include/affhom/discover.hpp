#pragma once

#include "affhom/closure.hpp"
#include "affhom/groebner.hpp"
#include "affhom/ratfunc.hpp"
#include "affhom/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace affhom {

struct NormalForm;

/// Identification of a completed jet with a normal form. `b` is the normal
/// form parameter as a function of the component's free unknown.
struct NormalFormMatch {
  std::string normal_form;
  std::optional<RatFunc> b;
  std::string via;  // "direct", "rescaling" or "<free> = <value>"
};

/// One solution component of the closure system with its completion.
struct DiscoveredComponent {
  bool family = false;
  std::string free;  // free unknown of a family
  std::map<std::string, RatFunc> assignments;
  std::array<Matrix4<RatFunc>, 3> pqr;
  std::optional<Jet<RatFunc>> completion;
  std::string completion_error;
  std::vector<NormalFormMatch> matches;
  std::optional<std::size_t> duplicate_of;
  std::string duplicate_reason;
  std::optional<bool> structure;  // u = xy form for I0, z^2 + theta(x, y) for Inr
};

struct Discovery {
  CaseId case_id = CaseId::I1;
  Jet<Rational> base;
  int target = 4;
  std::size_t free_unknowns = 0;
  std::size_t constraints = 0;
  bool tangency_consistent = true;
  SolutionSet solutions;
  std::vector<DiscoveredComponent> components;

  /// Components that are not tagged as duplicates.
  std::vector<const DiscoveredComponent*> distinct() const;
  Json to_json() const;
  Report report() const;
};

/// The case's starting jet (order 3, or the order-4 jet 2xy+z^2+x^3+x^4 for Inr).
Jet<Rational> case_base_jet(CaseId c);
/// Order to which components are completed: 4, or 5 for Inr.
int case_target_order(CaseId c);

/// Full discovery pipeline for a case: gauge-fixed (PQR) solve, closure
/// constraints, Groebner solve, completion and identification.
Discovery discover(CaseId c);

/// Same pipeline from an arbitrary base jet, using case `gauge` for the gauge
/// fixing and for identification.
Discovery discover_from(CaseId gauge, const Jet<Rational>& base, int target);

/// Parameter b with jet == nf(b), as a function of the jet's own parameter.
/// For a normal form without b the result holds b = 0 on a match.
std::optional<RatFunc> match_normal_form(const Jet<RatFunc>& jet, const NormalForm& nf);

/// x -> l^(w0) x, y -> l^(w1) y, z -> l^(w2) z, w -> l^(ww) w applied to the
/// graph w = F, given lambda^2. Returns nullopt when an odd power of lambda
/// would be needed.
std::optional<Jet<RatFunc>> weighted_rescale(const Jet<RatFunc>& j, const std::array<int, 3>& weights, int ww,
                                             const RatFunc& lambda_squared);

/// Exchange of x and y.
template <Scalar S>
Jet<S> swap_xy(const Jet<S>& j) {
  Poly<S> p(j.vars());
  for (const auto& [m, c] : j.poly().terms()) p.add_term(Monomial{int(m[1]), int(m[0]), int(m[2])}, c);
  return Jet<S>(p, j.order());
}

/// Value of a polynomial at an element of Q(t).
RatFunc compose(const UPoly& p, const RatFunc& t);

/// Specialization of a Q(t) jet at t = value; nullopt at a pole.
std::optional<Jet<Rational>> specialize(const Jet<RatFunc>& j, const Rational& value);

}  // namespace affhom
