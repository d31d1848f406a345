#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "jetcheck/rational.hpp"
#include "jetcheck/variable.hpp"

namespace jetcheck {

enum class ExprOp {
  Constant,
  Var,
  Add,    // n-ary
  Mul,    // n-ary; a leading rational factor carries signs/coefficients
  Div,    // binary
  Pow,    // integer exponent
  Sin,
  Cos,
  Atan2,  // atan2(y, x); closed under differentiation (rational derivative)
};

struct ExprNode;

/// Immutable shared-structure expression handle. All operations are pure;
/// concurrent use is safe.
class Expr {
 public:
  Expr();  // zero

  static Expr constant(Rational value);
  static Expr variable(Variable v);
  static Expr add(std::vector<Expr> terms);
  static Expr mul(std::vector<Expr> factors);
  static Expr div(Expr num, Expr den);
  static Expr pow(Expr base, int exponent);
  static Expr sin(Expr arg);
  static Expr cos(Expr arg);
  static Expr atan2(Expr y, Expr x);
  static Expr neg(Expr e);

  friend Expr operator+(const Expr& a, const Expr& b) {
    return add({a, b});
  }
  friend Expr operator-(const Expr& a, const Expr& b) {
    return add({a, neg(b)});
  }
  friend Expr operator*(const Expr& a, const Expr& b) {
    return mul({a, b});
  }
  friend Expr operator/(const Expr& a, const Expr& b) { return div(a, b); }

  const ExprNode& node() const { return *node_; }
  const ExprNode* raw() const { return node_.get(); }

  bool is_constant() const;
  bool is_zero() const;  // structurally the constant 0
  Rational constant_value() const;

  std::string str() const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  ExprOp op{ExprOp::Constant};
  Rational value;           // Constant
  Variable var;             // Var
  std::vector<Expr> args;   // children
  int exponent{0};          // Pow
};

/// Exact partial derivative by structural rules.
Expr differentiate(const Expr& e, const Variable& v);

/// Numeric evaluation at a total assignment. Throws SingularPointError when a
/// denominator passes within 1e-3 of zero (or atan2 is evaluated near the
/// origin). If `scale` is non-null it receives max |subterm| encountered.
double evaluate(const Expr& e, const Point& pt, double* scale = nullptr);

/// Simultaneous substitution of variables by expressions.
Expr substitute(const Expr& e,
                const std::unordered_map<Variable, Expr, VariableHash>& map);

/// Free variables, sorted by (name, order).
std::vector<Variable> free_variables(const Expr& e);

/// Structural equality (same tree up to shared-node identity).
bool expr_equal(const Expr& a, const Expr& b);

/// Number of distinct nodes in the DAG (diagnostics).
std::size_t dag_size(const Expr& e);

}  // namespace jetcheck
