#pragma once

#include "affhom/error.hpp"
#include "affhom/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace affhom {

/// Exponent vector of a monomial.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  Monomial(std::initializer_list<int> exps) {
    for (int e : exps) e_.push_back(static_cast<Exponent>(e));
  }
  explicit Monomial(std::vector<Exponent> e) : e_(std::move(e)) {}

  static Monomial unit(std::size_t nvars, std::size_t var) {
    Monomial m(nvars);
    m.e_[var] = 1;
    return m;
  }

  std::size_t size() const { return e_.size(); }
  Exponent operator[](std::size_t i) const { return e_[i]; }
  Exponent& operator[](std::size_t i) { return e_[i]; }
  const std::vector<Exponent>& exponents() const { return e_; }

  int degree() const {
    int d = 0;
    for (auto x : e_) d += x;
    return d;
  }
  bool is_one() const {
    return std::all_of(e_.begin(), e_.end(), [](Exponent x) { return x == 0; });
  }
  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = static_cast<Exponent>(r.e_[i] + b.e_[i]);
    return r;
  }
  /// Quotient; caller guarantees b divides a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = static_cast<Exponent>(r.e_[i] - b.e_[i]);
    return r;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::max(r.e_[i], b.e_[i]);
    return r;
  }
  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::min(r.e_[i], b.e_[i]);
    return r;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Exponent> e_;
};

/// Graded reverse lexicographic comparison: true when a > b.
struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
};

/// Ordered list of variable names shared by polynomials of one ring.
class VarList {
 public:
  VarList() : names_(std::make_shared<std::vector<std::string>>()) {}
  VarList(std::initializer_list<std::string> names)
      : names_(std::make_shared<std::vector<std::string>>(names)) {}
  explicit VarList(std::vector<std::string> names)
      : names_(std::make_shared<std::vector<std::string>>(std::move(names))) {}

  static const VarList& xyz() {
    static const VarList v{"x", "y", "z"};
    return v;
  }
  static const VarList& xyzw() {
    static const VarList v{"x", "y", "z", "w"};
    return v;
  }

  std::size_t size() const { return names_->size(); }
  const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(names_->begin(), names_->end(), name);
    if (it == names_->end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_->begin());
  }
  friend bool operator==(const VarList& a, const VarList& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Sparse multivariate polynomial; terms kept in descending grevlex order and
/// never store a zero coefficient.
template <Scalar S>
class Poly {
 public:
  using TermMap = std::map<Monomial, S, GrevlexGreater>;

  Poly() = default;
  explicit Poly(VarList vars) : vars_(std::move(vars)) {}

  static Poly constant(VarList vars, const S& c) {
    Poly p(std::move(vars));
    if (!is_zero_scalar(c)) p.terms_.emplace(Monomial(p.nvars()), c);
    return p;
  }
  static Poly variable(VarList vars, std::size_t i) {
    Poly p(std::move(vars));
    p.terms_.emplace(Monomial::unit(p.nvars(), i), S(Rational(1)));
    return p;
  }
  static Poly term(VarList vars, Monomial m, const S& c) {
    Poly p(std::move(vars));
    if (!is_zero_scalar(c)) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const VarList& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  S coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(Rational(0)) : it->second;
  }
  /// Leading term under grevlex; the polynomial must be nonzero.
  const std::pair<const Monomial, S>& leading() const { return *terms_.begin(); }
  int degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }
  int min_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = d < 0 ? m.degree() : std::min(d, m.degree());
    return d;
  }

  void add_term(const Monomial& m, const S& c) {
    if (is_zero_scalar(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = it->second + c;
      if (is_zero_scalar(it->second)) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) { return a.scaled(S(Rational(-1))); }
  friend Poly operator*(const Poly& a, const Poly& b) { return a.mul_truncated(b, -1); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

  Poly scaled(const S& s) const {
    Poly r(vars_);
    if (is_zero_scalar(s)) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, c * s);
    return r;
  }

  /// Product keeping only terms of total degree <= max_degree (all when < 0).
  Poly mul_truncated(const Poly& o, int max_degree) const {
    check_vars(o);
    Poly r(vars_);
    for (const auto& [ma, ca] : terms_) {
      int da = ma.degree();
      if (max_degree >= 0 && da > max_degree) continue;
      for (const auto& [mb, cb] : o.terms_) {
        if (max_degree >= 0 && da + mb.degree() > max_degree) continue;
        r.add_term(ma * mb, ca * cb);
      }
    }
    return r;
  }

  Poly truncated(int max_degree) const {
    Poly r(vars_);
    for (const auto& [m, c] : terms_)
      if (m.degree() <= max_degree) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }
  Poly homogeneous_part(int d) const {
    Poly r(vars_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }

  Poly partial(std::size_t var) const {
    Poly r(vars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial d = m;
      d[var] = static_cast<Monomial::Exponent>(d[var] - 1);
      r.add_term(d, c * S(Rational(static_cast<long>(m[var]))));
    }
    return r;
  }

  Poly pow(unsigned e, int max_degree = -1) const {
    Poly r = constant(vars_, S(Rational(1)));
    Poly b = *this;
    while (e) {
      if (e & 1) r = r.mul_truncated(b, max_degree);
      e >>= 1;
      if (e) b = b.mul_truncated(b, max_degree);
    }
    return r;
  }

  /// Composition p(images...) truncated at max_degree (no truncation when < 0).
  /// Images must share one variable list, possibly different from this one.
  Poly compose(const std::vector<Poly>& images, int max_degree = -1) const {
    if (images.size() != nvars()) throw VariableMismatch("substitution arity does not match variables");
    VarList target = images.empty() ? vars_ : images.front().vars();
    for (const auto& im : images)
      if (!(im.vars() == target)) throw VariableMismatch("substitution images use different variables");
    // powers[v][k] = images[v]^k, filled lazily
    std::vector<std::vector<Poly>> powers(nvars());
    auto power = [&](std::size_t v, unsigned k) -> const Poly& {
      auto& pv = powers[v];
      if (pv.empty()) pv.push_back(constant(target, S(Rational(1))));
      while (pv.size() <= k) pv.push_back(pv.back().mul_truncated(images[v], max_degree));
      return pv[k];
    };
    Poly r(target);
    for (const auto& [m, c] : terms_) {
      Poly t = constant(target, c);
      for (std::size_t v = 0; v < nvars() && !t.is_zero(); ++v)
        if (m[v]) t = t.mul_truncated(power(v, m[v]), max_degree);
      r += t;
    }
    return r;
  }

  /// Evaluates coefficients through f, dropping terms that map to zero.
  template <class F>
  auto map_coeffs(F&& f) const {
    using T = decltype(f(std::declval<const S&>()));
    Poly<T> r(vars_);
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  S eval(const std::vector<S>& point) const {
    S acc(Rational(0));
    for (const auto& [m, c] : terms_) {
      S t = c;
      for (std::size_t v = 0; v < nvars(); ++v)
        for (unsigned k = 0; k < m[v]; ++k) t = t * point[v];
      acc = acc + t;
    }
    return acc;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string cs = to_string(c);
      bool neg = !cs.empty() && cs[0] == '-' && cs.find_first_of("+- ", 1) == std::string::npos;
      if (neg) cs = cs.substr(1);
      bool compound = cs.find_first_of("+- ", 0) != std::string::npos;
      if (compound) cs = "(" + cs + ")";
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      std::string ms = monomial_str(m);
      if (ms.empty()) {
        os << cs;
      } else {
        if (cs != "1") os << cs << "*";
        os << ms;
      }
    }
    return os.str();
  }

  std::string monomial_str(const Monomial& m) const {
    std::string s;
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (!m[v]) continue;
      if (!s.empty()) s += "*";
      s += vars_[v];
      if (m[v] > 1) s += "^" + std::to_string(m[v]);
    }
    return s;
  }

 private:
  static bool is_zero_scalar(const S& s) { return ::affhom::is_zero(s); }
  void check_vars(const Poly& o) const {
    if (!(vars_ == o.vars_)) throw VariableMismatch("polynomials over different variables");
  }

  VarList vars_;
  TermMap terms_;
};

}  // namespace affhom
