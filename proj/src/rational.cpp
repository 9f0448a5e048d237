#include "affhom/rational.hpp"

#include "affhom/error.hpp"

#include <cctype>

namespace affhom {

Rational::Rational(long n, long d) {
  if (d == 0) throw DomainError("zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
  if (d == 0) throw DomainError("zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  bool neg = false;
  if (!t.empty() && (t.front() == '-' || t.front() == '+')) {
    neg = t.front() == '-';
    t.remove_prefix(1);
  }
  auto slash = t.find('/');
  std::string_view n = t.substr(0, slash);
  std::string_view d = slash == std::string_view::npos ? std::string_view("1") : t.substr(slash + 1);
  if (!all_digits(n) || !all_digits(d))
    throw ParseError("malformed rational '" + std::string(text) + "'", 0);
  mpz_class num(std::string(n), 10);
  mpz_class den(std::string(d), 10);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
  if (neg) num = -num;
  return Rational(num, den);
}

std::size_t Rational::bit_size() const {
  return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
}

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
  return Rational(r);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

std::optional<Rational> Rational::root(unsigned long k) const {
  if (k == 0) return std::nullopt;
  if (sign() < 0 && k % 2 == 0) return std::nullopt;
  mpz_class n = ::abs(num()), d = den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k)) return std::nullopt;
  if (sign() < 0) rn = -rn;
  return Rational(rn, rd);
}

std::string Rational::str() const { return q_.get_str(10); }

std::pair<mpz_class, Rational> squarefree_decompose(const Rational& d) {
  if (d.is_zero()) return {mpz_class(0), Rational(0)};
  // d = n/m = n*m / m^2
  mpz_class n = d.num() * d.den();
  mpz_class sign = n < 0 ? -1 : 1;
  n = ::abs(n);
  mpz_class core = 1, square = 1;
  mpz_class p = 2;
  while (p * p <= n) {
    int e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) square *= p;
    if (e % 2) core *= p;
    p += (p == 2 ? 1 : 2);
  }
  core *= n;
  return {sign * core, Rational(square, d.den())};
}

}  // namespace affhom
