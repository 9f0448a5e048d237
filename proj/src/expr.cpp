#include "affhom/expr.hpp"

#include "affhom/error.hpp"
#include "affhom/expand.hpp"

#include <cctype>
#include <sstream>

namespace affhom {

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

bool is_const(const ExprPtr& e, long v) {
  return e->kind == Expr::Kind::Const && e->value == Rational(v);
}

}  // namespace

ExprPtr Expr::variable(Var v) {
  Expr e;
  e.kind = Kind::Var;
  e.var = v;
  return make(std::move(e));
}

ExprPtr Expr::constant(Rational c) {
  Expr e;
  e.kind = Kind::Const;
  e.value = std::move(c);
  return make(std::move(e));
}

ExprPtr Expr::add(ExprPtr l, ExprPtr r) {
  Expr e;
  e.kind = Kind::Add;
  e.a = std::move(l);
  e.b = std::move(r);
  return make(std::move(e));
}

ExprPtr Expr::sub(ExprPtr l, ExprPtr r) {
  Expr e;
  e.kind = Kind::Sub;
  e.a = std::move(l);
  e.b = std::move(r);
  return make(std::move(e));
}

ExprPtr Expr::mul(ExprPtr l, ExprPtr r) {
  Expr e;
  e.kind = Kind::Mul;
  e.a = std::move(l);
  e.b = std::move(r);
  return make(std::move(e));
}

ExprPtr Expr::neg(ExprPtr x) {
  Expr e;
  e.kind = Kind::Neg;
  e.a = std::move(x);
  return make(std::move(e));
}

ExprPtr Expr::pow(ExprPtr base, Rational exponent, bool from_param) {
  Expr e;
  e.kind = Kind::Pow;
  e.a = std::move(base);
  e.value = std::move(exponent);
  e.from_param = from_param;
  return make(std::move(e));
}

ExprPtr Expr::exp(ExprPtr x) {
  Expr e;
  e.kind = Kind::Exp;
  e.a = std::move(x);
  return make(std::move(e));
}

ExprPtr Expr::log(ExprPtr x) {
  Expr e;
  e.kind = Kind::Log;
  e.a = std::move(x);
  return make(std::move(e));
}

std::string to_string(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Var:
      return std::string(1, "WXYZ"[static_cast<int>(e->var)]);
    case Expr::Kind::Const:
      return e->value.sign() < 0 || !e->value.is_integer() ? "(" + e->value.str() + ")" : e->value.str();
    case Expr::Kind::Add:
      return "(" + to_string(e->a) + " + " + to_string(e->b) + ")";
    case Expr::Kind::Sub:
      return "(" + to_string(e->a) + " - " + to_string(e->b) + ")";
    case Expr::Kind::Mul:
      return to_string(e->a) + "*" + to_string(e->b);
    case Expr::Kind::Neg:
      return "-(" + to_string(e->a) + ")";
    case Expr::Kind::Pow: {
      std::string ex = e->from_param ? "alpha" : e->value.str();
      if (!e->from_param && (e->value.sign() < 0 || !e->value.is_integer())) ex = "(" + ex + ")";
      return to_string(e->a) + "^" + ex;
    }
    case Expr::Kind::Exp:
      return "exp(" + to_string(e->a) + ")";
    case Expr::Kind::Log:
      return "log(" + to_string(e->a) + ")";
  }
  return "?";
}

ExprPtr derivative(const ExprPtr& e, Var v) {
  using K = Expr::Kind;
  auto zero = [] { return Expr::constant(Rational(0)); };
  auto times = [](ExprPtr l, ExprPtr r) -> ExprPtr {
    if (is_const(l, 0) || is_const(r, 0)) return Expr::constant(Rational(0));
    if (is_const(l, 1)) return r;
    if (is_const(r, 1)) return l;
    return Expr::mul(std::move(l), std::move(r));
  };
  auto plus = [](ExprPtr l, ExprPtr r) -> ExprPtr {
    if (is_const(l, 0)) return r;
    if (is_const(r, 0)) return l;
    return Expr::add(std::move(l), std::move(r));
  };
  switch (e->kind) {
    case K::Var:
      return Expr::constant(Rational(e->var == v ? 1 : 0));
    case K::Const:
      return zero();
    case K::Add:
      return plus(derivative(e->a, v), derivative(e->b, v));
    case K::Sub: {
      ExprPtr da = derivative(e->a, v), db = derivative(e->b, v);
      if (is_const(db, 0)) return da;
      return Expr::sub(da, db);
    }
    case K::Neg: {
      ExprPtr da = derivative(e->a, v);
      return is_const(da, 0) ? da : Expr::neg(da);
    }
    case K::Mul:
      return plus(times(derivative(e->a, v), e->b), times(e->a, derivative(e->b, v)));
    case K::Pow: {
      ExprPtr da = derivative(e->a, v);
      if (is_const(da, 0) || e->value.is_zero()) return zero();
      ExprPtr inner = e->value == Rational(1) ? Expr::constant(Rational(1))
                                              : Expr::pow(e->a, e->value - Rational(1));
      return times(times(Expr::constant(e->value), inner), da);
    }
    case K::Exp:
      return times(e, derivative(e->a, v));
    case K::Log:
      return times(derivative(e->a, v), Expr::pow(e->a, Rational(-1)));
  }
  return zero();
}

ExprPtr substitute(const ExprPtr& e, const std::map<Var, ExprPtr>& images) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::Var: {
      auto it = images.find(e->var);
      return it == images.end() ? e : it->second;
    }
    case K::Const:
      return e;
    case K::Add:
      return Expr::add(substitute(e->a, images), substitute(e->b, images));
    case K::Sub:
      return Expr::sub(substitute(e->a, images), substitute(e->b, images));
    case K::Mul:
      return Expr::mul(substitute(e->a, images), substitute(e->b, images));
    case K::Neg:
      return Expr::neg(substitute(e->a, images));
    case K::Pow:
      return Expr::pow(substitute(e->a, images), e->value, e->from_param);
    case K::Exp:
      return Expr::exp(substitute(e->a, images));
    case K::Log:
      return Expr::log(substitute(e->a, images));
  }
  return e;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Bindings& b) : s_(text), bindings_(b) {}

  ExprPtr expression() {
    skip();
    ExprPtr lhs;
    if (peek() == '-') {
      ++pos_;
      lhs = Expr::neg(term());
    } else {
      lhs = term();
    }
    for (;;) {
      skip();
      char c = peek();
      if (c == '+') {
        ++pos_;
        lhs = Expr::add(lhs, term());
      } else if (c == '-') {
        ++pos_;
        lhs = Expr::sub(lhs, term());
      } else {
        return lhs;
      }
    }
  }

  void expect(char c, const char* what) {
    skip();
    if (peek() != c) fail(std::string("expected ") + what);
    ++pos_;
  }

  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }
  std::size_t pos() const { return pos_; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

 private:
  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      skip();
      if (peek() == '*') {
        ++pos_;
        lhs = Expr::mul(lhs, factor());
      } else if (peek() == '/') {
        // quotient a/b is read as a*b^(-1)
        ++pos_;
        lhs = Expr::mul(lhs, Expr::pow(factor(), Rational(-1)));
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    ExprPtr base = atom();
    skip();
    if (peek() != '^') return base;
    ++pos_;
    skip();
    if (match_word("alpha")) {
      if (!bindings_.alpha) fail("unbound parameter alpha");
      return Expr::pow(base, *bindings_.alpha, true);
    }
    if (peek() == '(') {
      ++pos_;
      Rational r = rational();
      expect(')', "')' after exponent");
      return Expr::pow(base, r);
    }
    return Expr::pow(base, rational());
  }

  ExprPtr atom() {
    skip();
    char c = peek();
    switch (c) {
      case 'W': ++pos_; return Expr::variable(Var::W);
      case 'X': ++pos_; return Expr::variable(Var::X);
      case 'Y': ++pos_; return Expr::variable(Var::Y);
      case 'Z': ++pos_; return Expr::variable(Var::Z);
      default: break;
    }
    if (c == '(') {
      std::size_t open = pos_++;
      ExprPtr e = expression();
      skip();
      if (peek() != ')') throw ParseError("unclosed parenthesis", open);
      ++pos_;
      return e;
    }
    if (match_word("exp")) return Expr::exp(call_argument());
    if (match_word("log")) return Expr::log(call_argument());
    if (match_word("alpha")) {
      // coefficient use, as in X^2*Z + alpha*X^4
      if (!bindings_.alpha) fail("unbound parameter alpha");
      return Expr::constant(*bindings_.alpha);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') return Expr::constant(rational());
    if (pos_ >= s_.size()) fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  ExprPtr call_argument() {
    skip();
    if (peek() != '(') fail("expected '(' after function name");
    std::size_t open = pos_++;
    ExprPtr e = expression();
    skip();
    if (peek() != ')') throw ParseError("unclosed parenthesis", open);
    ++pos_;
    return e;
  }

  Rational rational() {
    skip();
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    std::size_t digits = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == digits) throw ParseError("expected a rational number", start);
    if (peek() == '/' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    try {
      return Rational::parse(s_.substr(start, pos_ - start));
    } catch (const ParseError&) {
      throw ParseError("invalid rational", start);
    }
  }

  bool match_word(std::string_view w) {
    if (s_.substr(pos_, w.size()) != w) return false;
    std::size_t end = pos_ + w.size();
    if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) return false;
    pos_ = end;
    return true;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view s_;
  const Bindings& bindings_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(std::string_view text, const Bindings& bindings) {
  Parser p(text, bindings);
  ExprPtr e = p.expression();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return e;
}

SurfaceSpec parse_surface(std::string_view text, const Bindings& bindings,
                          const std::array<Rational, 4>& basepoint) {
  Parser p(text, bindings);
  SurfaceSpec spec;
  spec.text = std::string(text);
  spec.bindings = bindings;
  spec.basepoint = basepoint;
  spec.lhs = p.expression();
  p.expect('=', "'='");
  spec.rhs = p.expression();
  if (!p.at_end()) p.fail("unexpected trailing input");
  Rational value = evaluate_at_point(spec.defining_function(), basepoint);
  if (!value.is_zero())
    throw DomainError("basepoint does not satisfy the equation (residual " + value.str() + ")");
  return spec;
}

std::array<Rational, 4> parse_basepoint(std::string_view text) {
  std::array<Rational, 4> r{};
  std::size_t i = 0, start = 0;
  for (std::size_t k = 0; k <= text.size(); ++k) {
    if (k == text.size() || text[k] == ',') {
      if (i >= 4) throw ParseError("basepoint needs exactly four coordinates", k);
      r[i++] = Rational::parse(text.substr(start, k - start));
      start = k + 1;
    }
  }
  if (i != 4) throw ParseError("basepoint needs exactly four coordinates", text.size());
  return r;
}

}  // namespace affhom
