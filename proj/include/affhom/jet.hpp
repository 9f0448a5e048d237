#pragma once

#include "affhom/poly.hpp"

#include <algorithm>
#include <vector>

namespace affhom {

/// Truncated power series: a polynomial whose terms all have total degree at
/// most order(). Arithmetic truncates to the smaller operand order.
template <Scalar S>
class Jet {
 public:
  Jet() = default;
  Jet(const Poly<S>& p, int order) : poly_(p.truncated(order)), order_(order) {}

  static Jet zero(VarList vars, int order) { return Jet(Poly<S>(std::move(vars)), order); }
  static Jet constant(VarList vars, const S& c, int order) {
    return Jet(Poly<S>::constant(std::move(vars), c), order);
  }
  static Jet variable(VarList vars, std::size_t i, int order) {
    return Jet(Poly<S>::variable(std::move(vars), i), order);
  }

  const Poly<S>& poly() const { return poly_; }
  int order() const { return order_; }
  const VarList& vars() const { return poly_.vars(); }
  bool is_zero() const { return poly_.is_zero(); }
  S constant_term() const { return poly_.coeff(Monomial(poly_.nvars())); }

  Jet truncated(int order) const { return Jet(poly_, std::min(order, order_)); }
  Jet with_order(int order) const { return Jet(poly_, order); }

  friend Jet operator+(const Jet& a, const Jet& b) {
    int n = std::min(a.order_, b.order_);
    return Jet(a.poly_.truncated(n) + b.poly_.truncated(n), n);
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    int n = std::min(a.order_, b.order_);
    return Jet(a.poly_.truncated(n) - b.poly_.truncated(n), n);
  }
  friend Jet operator-(const Jet& a) { return Jet(-a.poly_, a.order_); }
  friend Jet operator*(const Jet& a, const Jet& b) {
    int n = std::min(a.order_, b.order_);
    return Jet(a.poly_.mul_truncated(b.poly_, n), n);
  }
  friend bool operator==(const Jet& a, const Jet& b) { return a.order_ == b.order_ && a.poly_ == b.poly_; }

  Jet scaled(const S& s) const { return Jet(poly_.scaled(s), order_); }
  Jet operator+(const S& s) const { return *this + constant(vars(), s, order_); }

  /// Formal partial derivative; the result is known one order lower.
  Jet partial(std::size_t var) const { return Jet(poly_.partial(var), std::max(order_ - 1, 0)); }

  Jet pow(unsigned e) const { return Jet(poly_.pow(e, order_), order_); }

  /// Multiplicative inverse; requires a nonzero constant term.
  Jet inverse() const {
    S c0 = constant_term();
    if (::affhom::is_zero(c0)) throw DomainError("jet inverse needs a nonzero constant term");
    S inv = S(Rational(1)) / c0;
    // 1/(c0 (1+u)) = inv * sum (-u)^k
    Jet u = (scaled(inv) + S(Rational(-1)));
    return compose_univariate(u, geometric_coeffs(order_)).scaled(inv);
  }

  /// sum_k coeffs[k] * u^k truncated at u's order; u must have no constant term.
  static Jet compose_univariate(const Jet& u, const std::vector<S>& coeffs) {
    if (!::affhom::is_zero(u.constant_term())) throw DomainError("series composition needs a jet without constant term");
    Jet r = zero(u.vars(), u.order_);
    for (std::size_t k = coeffs.size(); k-- > 0;) r = r * u + coeffs[k];
    return r;
  }

  std::string str() const { return poly_.str() + " + O(" + std::to_string(order_ + 1) + ")"; }

 private:
  static std::vector<S> geometric_coeffs(int n) {
    std::vector<S> c;
    for (int k = 0; k <= n; ++k) c.push_back(S(Rational(k % 2 ? -1 : 1)));
    return c;
  }

  Poly<S> poly_;
  int order_ = 0;
};

/// Terms of total degree <= n.
template <Scalar S>
Jet<S> truncate(const Poly<S>& p, int n) {
  return Jet<S>(p, n);
}

/// p(images) truncated at order n.
template <Scalar S>
Jet<S> substitute(const Poly<S>& p, const std::vector<Poly<S>>& images, int n) {
  return Jet<S>(p.compose(images, n), n);
}

/// Lifts a rational polynomial into another coefficient field.
template <Scalar T>
Poly<T> lift(const Poly<Rational>& p) {
  return p.map_coeffs([](const Rational& c) { return T(c); });
}

}  // namespace affhom
