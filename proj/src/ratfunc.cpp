#include "affhom/ratfunc.hpp"

#include "affhom/error.hpp"

#include <algorithm>
#include <sstream>

namespace affhom {

UPoly::UPoly(Rational c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  Rational inv = c_.back().inverse();
  std::vector<Rational> d = c_;
  for (auto& c : d) c *= inv;
  return UPoly(std::move(d));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a) {
  std::vector<Rational> r = a.c_;
  for (auto& c : r) c = -c;
  return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(r));
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  std::vector<Rational> quo(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0);
  Rational lead_inv = b.leading().inverse();
  for (int i = static_cast<int>(rem.size()) - 1; i >= b.degree(); --i) {
    if (rem[i].is_zero()) continue;
    Rational f = rem[i] * lead_inv;
    int shift = i - b.degree();
    quo[shift] = f;
    for (int j = 0; j <= b.degree(); ++j) rem[shift + j] -= f * b.c_[j];
  }
  q = UPoly(std::move(quo));
  r = UPoly(std::move(rem));
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::size_t UPoly::bit_size() const {
  std::size_t s = 0;
  for (const auto& c : c_) s += c.bit_size();
  return s;
}

std::string UPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[i];
    if (c.is_zero()) continue;
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.str();
      continue;
    }
    if (!mag.is_one()) os << mag.str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

RatFunc::RatFunc(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = UPoly(Rational(1));
    return;
  }
  UPoly g = UPoly::gcd(num_, den_);
  if (g.degree() > 0) {
    UPoly q, r;
    UPoly::divmod(num_, g, q, r);
    num_ = q;
    UPoly::divmod(den_, g, q, r);
    den_ = q;
  }
  Rational lead = den_.leading();
  if (!lead.is_one()) {
    Rational inv = lead.inverse();
    num_ = num_ * UPoly(inv);
    den_ = den_ * UPoly(inv);
  }
}

std::optional<Rational> RatFunc::constant() const {
  if (!is_constant()) return std::nullopt;
  return num_.coeff(0) / den_.coeff(0);
}

std::optional<Rational> RatFunc::eval(const Rational& b) const {
  Rational d = den_.eval(b);
  if (d.is_zero()) return std::nullopt;
  return num_.eval(b) / d;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) {
    num_ = num_ + o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw DomainError("division by zero rational function");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  normalize();
  return *this;
}

std::string RatFunc::str(const std::string& var) const {
  if (den_.is_constant()) {
    // den is monic, hence exactly 1
    return num_.str(var);
  }
  auto wrap = [&](const UPoly& p) {
    std::string s = p.str(var);
    bool simple = p.is_constant() && p.coeff(0).is_integer() && p.coeff(0).sign() >= 0;
    return simple ? s : "(" + s + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

}  // namespace affhom
