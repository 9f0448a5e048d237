#pragma once

#include "affhom/expr.hpp"
#include "affhom/ratfunc.hpp"
#include "affhom/jet.hpp"

#include <array>
#include <vector>

namespace affhom {

enum class Primitive { Exp, Log, Pow };

/// Exact Taylor coefficients of fn(center + u) up to u^order.
/// exp needs center 0 and log needs center 1 (otherwise the constant term is
/// transcendental); non-integer powers need a positive center whose power is
/// rational.
std::vector<Rational> taylor_coefficients(Primitive fn, const Rational& center, int order,
                                          const Rational& exponent = Rational(0));

/// Same as taylor_coefficients, returned as a univariate jet in "u".
Jet<Rational> taylor_primitive(Primitive fn, const Rational& center, int order,
                               const Rational& exponent = Rational(0));

/// Applies a primitive to a jet by series composition around its constant term.
Jet<Rational> apply_primitive(Primitive fn, const Jet<Rational>& j, const Rational& exponent = Rational(0));

/// Evaluates an expression with W, X, Y, Z bound to jets sharing one variable list.
Jet<Rational> evaluate(const ExprPtr& e, const std::array<Jet<Rational>, 4>& env);

/// Exact value at a point; throws DomainError when it is not rational.
Rational evaluate_at_point(const ExprPtr& e, const std::array<Rational, 4>& point);

/// Expansion of the defining function lhs - rhs in local coordinates
/// (x, y, z, w) around the basepoint, as a four-variable jet.
Jet<Rational> local_jet(const SurfaceSpec& spec, int order);

/// Graph jet w(x, y, z) with W = W0 + w, X = X0 + x, ... solving lhs = rhs to
/// the given order. Uses Newton iteration on jets.
Jet<Rational> expand_graph(const SurfaceSpec& spec, int order);

/// The first `steps` Newton iterates starting from w = 0 (exposed for testing
/// the convergence rate). Element k is the k-th iterate.
std::vector<Jet<Rational>> newton_iterates(const SurfaceSpec& spec, int order, int steps);

/// lhs - rhs evaluated on a graph jet (zero to the jet order when it solves).
Jet<Rational> graph_residual(const SurfaceSpec& spec, const Jet<Rational>& graph);

}  // namespace affhom

namespace affhom {

/// Jet in (x, y, z) of an expression written in lower-case graph variables,
/// e.g. "2*x*y + z^2 + x^3" or "(1 - (1 - 4*(2*x*y + z^2))^(1/2))/2".
Jet<Rational> parse_jet(std::string_view text, int order);

/// Like parse_jet, with coefficients that are polynomials in the parameter b,
/// e.g. "2*x*y + z^2 + x^2*z + b*x^4".
Jet<RatFunc> parse_param_jet(std::string_view text, int order);

}  // namespace affhom
