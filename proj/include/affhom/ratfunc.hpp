#pragma once

#include "affhom/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace affhom {

/// Dense univariate polynomial over Q, coefficients stored low degree first.
class UPoly {
 public:
  UPoly() = default;
  UPoly(Rational c);  // NOLINT(google-explicit-constructor)
  explicit UPoly(std::vector<Rational> coeffs);

  static UPoly x() { return UPoly({Rational(0), Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational eval(const Rational& x) const;
  UPoly derivative() const;
  UPoly monic() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division; throws on a zero divisor.
  static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
  /// Monic gcd (zero if both are zero).
  static UPoly gcd(UPoly a, UPoly b);

  std::size_t bit_size() const;
  std::string str(const std::string& var = "b") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Element of Q(b): numerator/denominator in lowest terms, denominator monic.
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(long n) : num_(Rational(n)), den_(Rational(1)) {}  // NOLINT
  RatFunc(Rational c) : num_(std::move(c)), den_(Rational(1)) {}  // NOLINT
  RatFunc(UPoly num, UPoly den);

  static RatFunc param() { return RatFunc(UPoly::x(), UPoly(Rational(1))); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Constant value when the function does not depend on the parameter.
  std::optional<Rational> constant() const;
  /// Value at a rational parameter; nullopt at a pole.
  std::optional<Rational> eval(const Rational& b) const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::size_t bit_size() const { return num_.bit_size() + den_.bit_size(); }
  std::string str(const std::string& var = "b") const;

 private:
  void normalize();
  UPoly num_;
  UPoly den_{Rational(1)};
};

inline bool is_zero(const RatFunc& r) { return r.is_zero(); }
inline std::string to_string(const RatFunc& r) { return r.str(); }
inline std::size_t bit_size(const RatFunc& r) { return r.bit_size(); }

}  // namespace affhom
