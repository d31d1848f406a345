#pragma once

#include <string>
#include <unordered_map>

#include "jetcheck/expr.hpp"

namespace jetcheck {

/// Identifier resolution for expression parsing. A name resolves either to a
/// coordinate (possibly with a jet suffix `@k`) or to a named rational
/// constant, which is folded into the AST at parse time.
class Scope {
 public:
  void add_variable(const Variable& v) { vars_[key(v.name, v.order)] = v; }
  void add_constant(const std::string& name, Rational value) {
    constants_[name] = value;
  }

  const Variable* find_variable(const std::string& name, int order) const {
    auto it = vars_.find(key(name, order));
    return it == vars_.end() ? nullptr : &it->second;
  }
  const Rational* find_constant(const std::string& name) const {
    auto it = constants_.find(name);
    return it == constants_.end() ? nullptr : &it->second;
  }

 private:
  static std::string key(const std::string& name, int order) {
    return name + "@" + std::to_string(order);
  }
  std::unordered_map<std::string, Variable> vars_;
  std::unordered_map<std::string, Rational> constants_;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' integer)?
///   base   := number | ident ('@' integer)? | '(' expr ')'
///           | ('sin'|'cos') '(' expr ')' | 'atan2' '(' expr ',' expr ')'
///           | '-' base
/// `ident@k` is the k-th derivative jet coordinate of control `ident`.
Expr parse_expr(const std::string& text, const Scope& scope);

}  // namespace jetcheck
