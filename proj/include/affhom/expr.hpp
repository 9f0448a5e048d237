#pragma once

#include "affhom/rational.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace affhom {

enum class Var { W = 0, X = 1, Y = 2, Z = 3 };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Node of a defining-equation syntax tree. Pow exponents are exact rationals;
/// `from_param` records that the exponent came from the bound alpha.
struct Expr {
  enum class Kind { Var, Const, Add, Sub, Mul, Neg, Pow, Exp, Log };

  Kind kind = Kind::Const;
  Var var = Var::W;
  Rational value;  // Const value or Pow exponent
  bool from_param = false;
  ExprPtr a, b;

  static ExprPtr variable(Var v);
  static ExprPtr constant(Rational c);
  static ExprPtr add(ExprPtr l, ExprPtr r);
  static ExprPtr sub(ExprPtr l, ExprPtr r);
  static ExprPtr mul(ExprPtr l, ExprPtr r);
  static ExprPtr neg(ExprPtr e);
  static ExprPtr pow(ExprPtr base, Rational exponent, bool from_param = false);
  static ExprPtr exp(ExprPtr e);
  static ExprPtr log(ExprPtr e);
};

std::string to_string(const ExprPtr& e);

/// d/dv of an expression, with trivial zero/one pruning.
ExprPtr derivative(const ExprPtr& e, Var v);

/// Replaces variables by expressions (simultaneously).
ExprPtr substitute(const ExprPtr& e, const std::map<Var, ExprPtr>& images);

struct Bindings {
  std::optional<Rational> alpha;
};

/// Implicit hypersurface lhs = rhs with a basepoint (W, X, Y, Z).
struct SurfaceSpec {
  std::string text;
  ExprPtr lhs, rhs;
  std::array<Rational, 4> basepoint{};
  Bindings bindings;

  /// lhs - rhs
  ExprPtr defining_function() const { return Expr::sub(lhs, rhs); }
};

/// Parses a single expression (no '=').
ExprPtr parse_expr(std::string_view text, const Bindings& bindings = {});

/// Parses "expr = expr" and checks that the basepoint satisfies it exactly.
SurfaceSpec parse_surface(std::string_view text, const Bindings& bindings,
                          const std::array<Rational, 4>& basepoint);

/// Parses "a,b,c,d" into four rationals.
std::array<Rational, 4> parse_basepoint(std::string_view text);

}  // namespace affhom
