#include "lsquad/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace lsquad {

namespace {

using eval_fn = std::function<double(double)>;

// Recursive-descent parser producing a closure tree. Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | primary ('^' factor)?
//   primary := number | 'x' | 'pi' | ident '(' expr ')' | '(' expr ')'
// Unary minus binds looser than the power, so -x^2 reads -(x^2) as in
// conventional notation, while exponents may themselves be negated (2^-3).
class parser {
 public:
  explicit parser(const std::string& text) : text_(text) {}

  eval_fn parse() {
    eval_fn e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  eval_fn parse_expr() {
    eval_fn lhs = parse_term();
    while (true) {
      skip_ws();
      if (consume('+')) {
        eval_fn rhs = parse_term();
        lhs = [l = std::move(lhs), r = std::move(rhs)](double x) { return l(x) + r(x); };
      } else if (consume('-')) {
        eval_fn rhs = parse_term();
        lhs = [l = std::move(lhs), r = std::move(rhs)](double x) { return l(x) - r(x); };
      } else {
        return lhs;
      }
    }
  }

  eval_fn parse_term() {
    eval_fn lhs = parse_factor();
    while (true) {
      skip_ws();
      if (consume('*')) {
        eval_fn rhs = parse_factor();
        lhs = [l = std::move(lhs), r = std::move(rhs)](double x) { return l(x) * r(x); };
      } else if (consume('/')) {
        eval_fn rhs = parse_factor();
        lhs = [l = std::move(lhs), r = std::move(rhs)](double x) { return l(x) / r(x); };
      } else {
        return lhs;
      }
    }
  }

  eval_fn parse_factor() {
    skip_ws();
    if (consume('-')) {
      eval_fn inner = parse_factor();
      return [i = std::move(inner)](double x) { return -i(x); };
    }
    eval_fn base = parse_primary();
    skip_ws();
    if (consume('^')) {
      eval_fn exponent = parse_factor();  // right-associative
      return [b = std::move(base), e = std::move(exponent)](double x) {
        return std::pow(b(x), e(x));
      };
    }
    return base;
  }

  eval_fn parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.c_str() + pos_;
      char* end = nullptr;
      const double value = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      return [value](double) { return value; };
    }

    if (consume('(')) {
      eval_fn inner = parse_expr();
      expect(')');
      return inner;
    }

    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string ident = text_.substr(start, pos_ - start);
      if (ident == "x") return [](double x) { return x; };
      if (ident == "pi") return [](double) { return std::numbers::pi; };
      expect('(');
      eval_fn arg = parse_expr();
      expect(')');
      if (ident == "sqrt")
        return [a = std::move(arg)](double x) { return std::sqrt(a(x)); };
      if (ident == "cos") return [a = std::move(arg)](double x) { return std::cos(a(x)); };
      if (ident == "sin") return [a = std::move(arg)](double x) { return std::sin(a(x)); };
      if (ident == "exp") return [a = std::move(arg)](double x) { return std::exp(a(x)); };
      if (ident == "abs") return [a = std::move(arg)](double x) { return std::abs(a(x)); };
      fail("unknown function '" + ident + "'", start);
    }

    fail(std::string("unexpected character '") + c + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }

  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw std::invalid_argument("weight expression: " + what + " at position " +
                                std::to_string(at) + " in \"" + text_ + "\"");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

weight_fn parse_weight_expr(const std::string& text) {
  parser p(text);
  return weight_fn::custom(text, p.parse());
}

weight_fn resolve_weight(const std::string& name_or_expr) {
  for (weight_kind kind :
       {weight_kind::one, weight_kind::one_minus_x2, weight_kind::sqrt_one_minus_x2,
        weight_kind::x_sqrt_one_minus_x3, weight_kind::cos_20pi_x}) {
    weight_fn w = weight_fn::catalog(kind);
    if (w.name() == name_or_expr) return w;
  }
  return parse_weight_expr(name_or_expr);
}

}  // namespace lsquad
