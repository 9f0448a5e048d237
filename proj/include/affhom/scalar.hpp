#pragma once

#include "affhom/quadext.hpp"
#include "affhom/ratfunc.hpp"
#include "affhom/rational.hpp"

#include <concepts>
#include <cstddef>
#include <optional>
#include <string>

namespace affhom {

/// Coefficient field usable by the polynomial, jet and linear-algebra code:
/// Rational (Q), RatFunc (Q(b)) or QuadExt (multiquadratic towers over Q).
template <class S>
concept Scalar = std::regular<S> && std::constructible_from<S, Rational> && requires(const S& a, const S& b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { is_zero(a) } -> std::convertible_to<bool>;
  { to_string(a) } -> std::convertible_to<std::string>;
  { bit_size(a) } -> std::convertible_to<std::size_t>;
};

/// Condition under which a pivot may vanish; only parametric scalars have one.
inline std::optional<std::string> degeneracy_condition(const Rational&) { return std::nullopt; }
inline std::optional<std::string> degeneracy_condition(const QuadExt&) { return std::nullopt; }
inline std::optional<std::string> degeneracy_condition(const RatFunc& r) {
  if (r.num().is_constant()) return std::nullopt;
  return r.num().str() + " != 0";
}

}  // namespace affhom
