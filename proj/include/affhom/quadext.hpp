#pragma once

#include "affhom/error.hpp"
#include "affhom/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace affhom {

/// Multiquadratic tower Q(sqrt(d1), sqrt(d2)) with squarefree integer
/// radicands. Depth is capped at kMaxDepth.
struct Tower {
  static constexpr std::size_t kMaxDepth = 2;
  std::vector<long> radicands;

  std::size_t depth() const { return radicands.size(); }
  std::size_t dimension() const { return std::size_t{1} << radicands.size(); }
  bool is_prefix_of(const Tower& o) const;
  /// Basis element names: "1", "i", "sqrt(2)", "i*sqrt(2)", ...
  std::vector<std::string> basis_names() const;
  friend bool operator==(const Tower&, const Tower&) = default;
};

class TowerError : public Error {
 public:
  using Error::Error;
};

/// Element of a multiquadratic tower, stored by coordinates on the product
/// basis: coordinate m multiplies prod_{bit i of m} sqrt(d_i).
class QuadExt {
 public:
  QuadExt() : coords_{Rational(0)} {}
  QuadExt(long n) : coords_{Rational(n)} {}  // NOLINT(google-explicit-constructor)
  QuadExt(Rational r) : coords_{std::move(r)} {}  // NOLINT(google-explicit-constructor)
  QuadExt(Tower t, std::vector<Rational> coords);

  /// sqrt(d_index) in tower t.
  static QuadExt generator(const Tower& t, std::size_t index);

  const Tower& tower() const { return tower_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_rational() const;
  Rational rational_part() const { return coords_[0]; }
  QuadExt embedded(const Tower& bigger) const;
  QuadExt conjugate(std::size_t index) const;
  QuadExt inverse() const;

  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o) { return *this *= o.inverse(); }
  friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
  friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
  friend QuadExt operator*(QuadExt a, const QuadExt& b) { return a *= b; }
  friend QuadExt operator/(QuadExt a, const QuadExt& b) { return a /= b; }
  friend QuadExt operator-(const QuadExt& a);
  friend bool operator==(const QuadExt& a, const QuadExt& b);

  std::size_t bit_size() const;
  std::string str() const;

 private:
  static Tower common(const Tower& a, const Tower& b);
  Tower tower_;
  std::vector<Rational> coords_;
};

inline bool is_zero(const QuadExt& q) { return q.is_zero(); }
inline std::string to_string(const QuadExt& q) { return q.str(); }
inline std::size_t bit_size(const QuadExt& q) { return q.bit_size(); }

/// Square root of d inside the smallest extension of `base` that contains it.
/// Throws TowerError when the depth cap would be exceeded.
std::pair<Tower, QuadExt> sqrt_in_tower(const Rational& d, const Tower& base);

}  // namespace affhom
