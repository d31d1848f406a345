#include "jetcheck/parser.hpp"

#include <cctype>
#include <cstdlib>

#include "jetcheck/errors.hpp"

namespace jetcheck {

namespace {

class ExprParser {
 public:
  ExprParser(const std::string& text, const Scope& scope)
      : text_(text), scope_(scope) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  Expr expr() {
    Expr e = term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        e = e + term();
      } else if (accept('-')) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        e = e * factor();
      } else if (accept('/')) {
        e = e / factor();
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    Expr b = base();
    skip_ws();
    if (accept('^')) return Expr::pow(b, integer());
    return b;
  }

  Expr base() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (accept('-')) return Expr::neg(base());
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Expr number() {
    std::size_t start = pos_;
    long long whole = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      whole = whole * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      long long frac = 0, denom = 1;
      std::size_t digits = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        frac = frac * 10 + (text_[pos_] - '0');
        denom *= 10;
        ++pos_;
      }
      if (pos_ == digits) throw ParseError("malformed decimal number", start);
      return Expr::constant(Rational(whole) + Rational(frac, denom));
    }
    return Expr::constant(Rational(whole));
  }

  Expr identifier() {
    std::size_t start = pos_;
    std::string name;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      name += text_[pos_];
      ++pos_;
    }
    if (name == "sin" || name == "cos") {
      skip_ws();
      expect('(');
      Expr arg = expr();
      expect(')');
      return name == "sin" ? Expr::sin(arg) : Expr::cos(arg);
    }
    if (name == "atan2") {
      skip_ws();
      expect('(');
      Expr y = expr();
      expect(',');
      Expr x = expr();
      expect(')');
      return Expr::atan2(y, x);
    }
    int order = 0;
    bool has_order = false;
    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      order = integer_unsigned();
      has_order = true;
    }
    if (const Variable* v = scope_.find_variable(name, order)) {
      return Expr::variable(*v);
    }
    if (!has_order) {
      if (const Rational* c = scope_.find_constant(name))
        return Expr::constant(*c);
    }
    throw UnknownIdentifierError(
        has_order ? name + "@" + std::to_string(order) : name, start);
  }

  int integer() {
    skip_ws();
    bool negative = accept('-');
    int v = integer_unsigned();
    return negative ? -v : v;
  }

  int integer_unsigned() {
    skip_ws();
    if (pos_ >= text_.size() ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError("expected integer", pos_);
    int v = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c))
      throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  const std::string& text_;
  const Scope& scope_;
  std::size_t pos_{0};
};

}  // namespace

Expr parse_expr(const std::string& text, const Scope& scope) {
  return ExprParser(text, scope).parse();
}

}  // namespace jetcheck
