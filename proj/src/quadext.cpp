#include "affhom/quadext.hpp"

#include "affhom/error.hpp"

#include <sstream>

namespace affhom {

bool Tower::is_prefix_of(const Tower& o) const {
  if (radicands.size() > o.radicands.size()) return false;
  for (std::size_t i = 0; i < radicands.size(); ++i)
    if (radicands[i] != o.radicands[i]) return false;
  return true;
}

std::vector<std::string> Tower::basis_names() const {
  std::vector<std::string> names;
  for (std::size_t m = 0; m < dimension(); ++m) {
    std::string s;
    for (std::size_t i = 0; i < depth(); ++i) {
      if (!(m >> i & 1)) continue;
      if (!s.empty()) s += "*";
      s += radicands[i] == -1 ? "i" : "sqrt(" + std::to_string(radicands[i]) + ")";
    }
    names.push_back(s.empty() ? "1" : s);
  }
  return names;
}

QuadExt::QuadExt(Tower t, std::vector<Rational> coords) : tower_(std::move(t)), coords_(std::move(coords)) {
  if (tower_.depth() > Tower::kMaxDepth) throw TowerError("extension tower deeper than 2");
  if (coords_.size() != tower_.dimension()) throw TowerError("coordinate count does not match tower");
}

QuadExt QuadExt::generator(const Tower& t, std::size_t index) {
  std::vector<Rational> c(t.dimension(), Rational(0));
  c[std::size_t{1} << index] = Rational(1);
  return QuadExt(t, std::move(c));
}

bool QuadExt::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

bool QuadExt::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (!coords_[i].is_zero()) return false;
  return true;
}

Tower QuadExt::common(const Tower& a, const Tower& b) {
  if (a.is_prefix_of(b)) return b;
  if (b.is_prefix_of(a)) return a;
  throw TowerError("incompatible extension towers");
}

QuadExt QuadExt::embedded(const Tower& bigger) const {
  if (bigger == tower_) return *this;
  if (!tower_.is_prefix_of(bigger)) throw TowerError("cannot embed into a non-extension tower");
  std::vector<Rational> c(bigger.dimension(), Rational(0));
  for (std::size_t i = 0; i < coords_.size(); ++i) c[i] = coords_[i];
  return QuadExt(bigger, std::move(c));
}

QuadExt QuadExt::conjugate(std::size_t index) const {
  QuadExt r = *this;
  for (std::size_t m = 0; m < r.coords_.size(); ++m)
    if (m >> index & 1) r.coords_[m] = -r.coords_[m];
  return r;
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  Tower t = common(tower_, o.tower_);
  *this = embedded(t);
  QuadExt b = o.embedded(t);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += b.coords_[i];
  return *this;
}

QuadExt operator-(const QuadExt& a) {
  QuadExt r = a;
  for (auto& c : r.coords_) c = -c;
  return r;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) { return *this += -o; }

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  Tower t = common(tower_, o.tower_);
  QuadExt a = embedded(t);
  QuadExt b = o.embedded(t);
  std::vector<Rational> c(t.dimension(), Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (a.coords_[i].is_zero()) continue;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (b.coords_[j].is_zero()) continue;
      Rational f = a.coords_[i] * b.coords_[j];
      std::size_t shared = i & j;
      for (std::size_t k = 0; k < t.depth(); ++k)
        if (shared >> k & 1) f *= Rational(t.radicands[k]);
      c[i ^ j] += f;
    }
  }
  *this = QuadExt(t, std::move(c));
  return *this;
}

QuadExt QuadExt::inverse() const {
  if (is_zero()) throw DomainError("division by zero in extension field");
  // Product of all non-trivial Galois conjugates; x * that product is rational.
  QuadExt others(Rational(1));
  std::size_t n = tower_.depth();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    QuadExt c = *this;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1) c = c.conjugate(k);
    others *= c;
  }
  QuadExt norm = *this * others;
  if (!norm.is_rational()) throw TowerError("norm computation left the base field");
  Rational inv = norm.rational_part().inverse();
  QuadExt r = others.embedded(tower_);
  for (auto& c : r.coords_) c *= inv;
  return r;
}

bool operator==(const QuadExt& a, const QuadExt& b) {
  Tower t = QuadExt::common(a.tower_, b.tower_);
  return a.embedded(t).coords_ == b.embedded(t).coords_;
}

std::size_t QuadExt::bit_size() const {
  std::size_t s = 0;
  for (const auto& c : coords_) s += c.bit_size();
  return s;
}

std::string QuadExt::str() const {
  auto names = tower_.basis_names();
  std::ostringstream os;
  bool first = true;
  for (std::size_t m = 0; m < coords_.size(); ++m) {
    const Rational& c = coords_[m];
    if (c.is_zero()) continue;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    Rational mag = c.abs();
    if (m == 0) {
      os << mag.str();
    } else if (mag.is_one()) {
      os << names[m];
    } else {
      os << mag.str() << "*" << names[m];
    }
  }
  return first ? "0" : os.str();
}

std::pair<Tower, QuadExt> sqrt_in_tower(const Rational& d, const Tower& base) {
  if (d.is_zero()) return {base, QuadExt(Rational(0))};
  // Try every product of existing generators: d = r^2 * prod d_i.
  for (std::size_t mask = 0; mask < base.dimension(); ++mask) {
    Rational prod(1);
    for (std::size_t k = 0; k < base.depth(); ++k)
      if (mask >> k & 1) prod *= Rational(base.radicands[k]);
    if (auto r = (d / prod).root(2)) {
      std::vector<Rational> c(base.dimension(), Rational(0));
      c[mask] = *r;
      return {base, QuadExt(base, std::move(c))};
    }
  }
  if (base.depth() >= Tower::kMaxDepth) throw TowerError("square root needs an extension deeper than 2");
  auto [core, scale] = squarefree_decompose(d);
  Tower t = base;
  t.radicands.push_back(core.get_si());
  std::vector<Rational> c(t.dimension(), Rational(0));
  c[std::size_t{1} << base.depth()] = scale;
  return {t, QuadExt(t, std::move(c))};
}

}  // namespace affhom
