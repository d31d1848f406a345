#include "jetcheck/expr.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

#include "jetcheck/errors.hpp"

namespace jetcheck {

namespace {

constexpr double kSingularBand = 1e-3;

std::shared_ptr<const ExprNode> make_node(ExprNode n) {
  return std::make_shared<const ExprNode>(std::move(n));
}

const Expr& zero_expr() {
  static const Expr z = Expr::constant(Rational(0));
  return z;
}
const Expr& one_expr() {
  static const Expr o = Expr::constant(Rational(1));
  return o;
}

}  // namespace

Expr::Expr() : node_(zero_expr().node_) {}

bool Expr::is_constant() const { return node_->op == ExprOp::Constant; }
bool Expr::is_zero() const { return is_constant() && node_->value.is_zero(); }
Rational Expr::constant_value() const { return node_->value; }

Expr Expr::constant(Rational value) {
  ExprNode n;
  n.op = ExprOp::Constant;
  n.value = value;
  return Expr(make_node(std::move(n)));
}

Expr Expr::variable(Variable v) {
  ExprNode n;
  n.op = ExprOp::Var;
  n.var = std::move(v);
  return Expr(make_node(std::move(n)));
}

// Simplification is deliberately limited to constant folding and flattening
// of sums/products; correctness rests on the sampled zero test.
Expr Expr::add(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  Rational c(0);
  for (auto& t : terms) {
    if (t.node().op == ExprOp::Add) {
      for (const auto& s : t.node().args) {
        if (s.is_constant())
          c = c + s.constant_value();
        else
          flat.push_back(s);
      }
    } else if (t.is_constant()) {
      c = c + t.constant_value();
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (!c.is_zero() || flat.empty()) flat.insert(flat.begin(), constant(c));
  if (flat.size() == 1) return flat[0];
  ExprNode n;
  n.op = ExprOp::Add;
  n.args = std::move(flat);
  return Expr(make_node(std::move(n)));
}

Expr Expr::mul(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  Rational c(1);
  for (auto& f : factors) {
    if (f.node().op == ExprOp::Mul) {
      for (const auto& g : f.node().args) {
        if (g.is_constant())
          c = c * g.constant_value();
        else
          flat.push_back(g);
      }
    } else if (f.is_constant()) {
      c = c * f.constant_value();
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (c.is_zero()) return zero_expr();
  if (flat.empty()) return constant(c);
  if (!c.is_one()) flat.insert(flat.begin(), constant(c));
  if (flat.size() == 1) return flat[0];
  ExprNode n;
  n.op = ExprOp::Mul;
  n.args = std::move(flat);
  return Expr(make_node(std::move(n)));
}

Expr Expr::div(Expr num, Expr den) {
  if (num.is_constant() && den.is_constant())
    return constant(num.constant_value() / den.constant_value());
  if (den.is_constant()) {
    // fold division by a constant into a product with its inverse
    return mul({constant(Rational(1) / den.constant_value()), std::move(num)});
  }
  ExprNode n;
  n.op = ExprOp::Div;
  n.args = {std::move(num), std::move(den)};
  return Expr(make_node(std::move(n)));
}

Expr Expr::pow(Expr base, int exponent) {
  if (exponent == 0) return one_expr();
  if (exponent == 1) return base;
  if (base.is_constant() && (base.constant_value().num() != 0 || exponent > 0))
    return constant(base.constant_value().pow(exponent));
  if (base.node().op == ExprOp::Pow) {
    int inner = base.node().exponent;
    return pow(base.node().args[0], inner * exponent);
  }
  ExprNode n;
  n.op = ExprOp::Pow;
  n.args = {std::move(base)};
  n.exponent = exponent;
  return Expr(make_node(std::move(n)));
}

Expr Expr::sin(Expr arg) {
  ExprNode n;
  n.op = ExprOp::Sin;
  n.args = {std::move(arg)};
  return Expr(make_node(std::move(n)));
}

Expr Expr::cos(Expr arg) {
  ExprNode n;
  n.op = ExprOp::Cos;
  n.args = {std::move(arg)};
  return Expr(make_node(std::move(n)));
}

Expr Expr::atan2(Expr y, Expr x) {
  ExprNode n;
  n.op = ExprOp::Atan2;
  n.args = {std::move(y), std::move(x)};
  return Expr(make_node(std::move(n)));
}

Expr Expr::neg(Expr e) { return mul({constant(Rational(-1)), std::move(e)}); }

namespace {

class Differentiator {
 public:
  explicit Differentiator(const Variable& v) : v_(v) {}

  Expr run(const Expr& e) {
    auto it = memo_.find(e.raw());
    if (it != memo_.end()) return it->second;
    Expr d = compute(e);
    memo_.emplace(e.raw(), d);
    return d;
  }

 private:
  Expr compute(const Expr& e) {
    const ExprNode& n = e.node();
    switch (n.op) {
      case ExprOp::Constant:
        return Expr::constant(Rational(0));
      case ExprOp::Var:
        return n.var == v_ ? Expr::constant(Rational(1))
                           : Expr::constant(Rational(0));
      case ExprOp::Add: {
        std::vector<Expr> parts;
        parts.reserve(n.args.size());
        for (const auto& a : n.args) parts.push_back(run(a));
        return Expr::add(std::move(parts));
      }
      case ExprOp::Mul: {
        std::vector<Expr> parts;
        for (std::size_t i = 0; i < n.args.size(); ++i) {
          Expr di = run(n.args[i]);
          if (di.is_zero()) continue;
          std::vector<Expr> term;
          term.reserve(n.args.size());
          for (std::size_t j = 0; j < n.args.size(); ++j)
            term.push_back(i == j ? di : n.args[j]);
          parts.push_back(Expr::mul(std::move(term)));
        }
        return Expr::add(std::move(parts));
      }
      case ExprOp::Div: {
        const Expr& a = n.args[0];
        const Expr& b = n.args[1];
        Expr da = run(a), db = run(b);
        return Expr::div(da * b - a * db, Expr::pow(b, 2));
      }
      case ExprOp::Pow: {
        const Expr& b = n.args[0];
        Expr db = run(b);
        return Expr::mul({Expr::constant(Rational(n.exponent)),
                          Expr::pow(b, n.exponent - 1), db});
      }
      case ExprOp::Sin:
        return Expr::cos(n.args[0]) * run(n.args[0]);
      case ExprOp::Cos:
        return Expr::neg(Expr::sin(n.args[0])) * run(n.args[0]);
      case ExprOp::Atan2: {
        const Expr& y = n.args[0];
        const Expr& x = n.args[1];
        Expr dy = run(y), dx = run(x);
        return Expr::div(x * dy - y * dx,
                         Expr::pow(x, 2) + Expr::pow(y, 2));
      }
    }
    throw Error("unreachable expression op");
  }

  const Variable& v_;
  std::unordered_map<const ExprNode*, Expr> memo_;
};

class Evaluator {
 public:
  Evaluator(const Point& pt, double* scale) : pt_(pt), scale_(scale) {}

  double run(const Expr& e) {
    auto it = memo_.find(e.raw());
    if (it != memo_.end()) return it->second;
    double v = compute(e);
    if (!std::isfinite(v))
      throw SingularPointError("non-finite value in evaluation");
    if (scale_) *scale_ = std::max(*scale_, std::abs(v));
    memo_.emplace(e.raw(), v);
    return v;
  }

 private:
  double compute(const Expr& e) {
    const ExprNode& n = e.node();
    switch (n.op) {
      case ExprOp::Constant:
        return n.value.to_double();
      case ExprOp::Var: {
        auto v = pt_.get(n.var);
        if (!v)
          throw Error("point does not assign variable '" + n.var.str() + "'");
        return *v;
      }
      case ExprOp::Add: {
        double s = 0;
        for (const auto& a : n.args) s += run(a);
        return s;
      }
      case ExprOp::Mul: {
        double p = 1;
        for (const auto& a : n.args) p *= run(a);
        return p;
      }
      case ExprOp::Div: {
        double num = run(n.args[0]);
        double den = run(n.args[1]);
        if (std::abs(den) < kSingularBand)
          throw SingularPointError("denominator within 1e-3 of zero");
        return num / den;
      }
      case ExprOp::Pow: {
        double b = run(n.args[0]);
        if (n.exponent < 0 && std::abs(b) < kSingularBand)
          throw SingularPointError("negative power of near-zero base");
        return std::pow(b, n.exponent);
      }
      case ExprOp::Sin:
        return std::sin(run(n.args[0]));
      case ExprOp::Cos:
        return std::cos(run(n.args[0]));
      case ExprOp::Atan2: {
        double y = run(n.args[0]);
        double x = run(n.args[1]);
        if (std::hypot(y, x) < kSingularBand)
          throw SingularPointError("atan2 near the origin");
        return std::atan2(y, x);
      }
    }
    throw Error("unreachable expression op");
  }

  const Point& pt_;
  double* scale_;
  std::unordered_map<const ExprNode*, double> memo_;
};

}  // namespace

Expr differentiate(const Expr& e, const Variable& v) {
  Differentiator d(v);
  return d.run(e);
}

double evaluate(const Expr& e, const Point& pt, double* scale) {
  Evaluator ev(pt, scale);
  return ev.run(e);
}

Expr substitute(const Expr& e,
                const std::unordered_map<Variable, Expr, VariableHash>& map) {
  std::unordered_map<const ExprNode*, Expr> memo;
  struct Rec {
    const std::unordered_map<Variable, Expr, VariableHash>& map;
    std::unordered_map<const ExprNode*, Expr>& memo;

    Expr run(const Expr& e) {
      auto it = memo.find(e.raw());
      if (it != memo.end()) return it->second;
      Expr out = compute(e);
      memo.emplace(e.raw(), out);
      return out;
    }

    Expr compute(const Expr& e) {
      const ExprNode& n = e.node();
      switch (n.op) {
        case ExprOp::Constant:
          return e;
        case ExprOp::Var: {
          auto it = map.find(n.var);
          return it == map.end() ? e : it->second;
        }
        case ExprOp::Add: {
          std::vector<Expr> parts;
          parts.reserve(n.args.size());
          for (const auto& a : n.args) parts.push_back(run(a));
          return Expr::add(std::move(parts));
        }
        case ExprOp::Mul: {
          std::vector<Expr> parts;
          parts.reserve(n.args.size());
          for (const auto& a : n.args) parts.push_back(run(a));
          return Expr::mul(std::move(parts));
        }
        case ExprOp::Div:
          return Expr::div(run(n.args[0]), run(n.args[1]));
        case ExprOp::Pow:
          return Expr::pow(run(n.args[0]), n.exponent);
        case ExprOp::Sin:
          return Expr::sin(run(n.args[0]));
        case ExprOp::Cos:
          return Expr::cos(run(n.args[0]));
        case ExprOp::Atan2:
          return Expr::atan2(run(n.args[0]), run(n.args[1]));
      }
      throw Error("unreachable expression op");
    }
  } rec{map, memo};
  return rec.run(e);
}

std::vector<Variable> free_variables(const Expr& e) {
  std::set<Variable> vars;
  std::unordered_set<const ExprNode*> seen;
  struct Rec {
    std::set<Variable>& vars;
    std::unordered_set<const ExprNode*>& seen;
    void run(const Expr& e) {
      if (!seen.insert(e.raw()).second) return;
      const ExprNode& n = e.node();
      if (n.op == ExprOp::Var) vars.insert(n.var);
      for (const auto& a : n.args) run(a);
    }
  } rec{vars, seen};
  rec.run(e);
  return {vars.begin(), vars.end()};
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.raw() == b.raw()) return true;
  const ExprNode& x = a.node();
  const ExprNode& y = b.node();
  if (x.op != y.op || x.args.size() != y.args.size()) return false;
  switch (x.op) {
    case ExprOp::Constant:
      if (!(x.value == y.value)) return false;
      break;
    case ExprOp::Var:
      if (!(x.var == y.var)) return false;
      break;
    case ExprOp::Pow:
      if (x.exponent != y.exponent) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (!expr_equal(x.args[i], y.args[i])) return false;
  return true;
}

std::size_t dag_size(const Expr& e) {
  std::unordered_set<const ExprNode*> seen;
  struct Rec {
    std::unordered_set<const ExprNode*>& seen;
    void run(const Expr& e) {
      if (!seen.insert(e.raw()).second) return;
      for (const auto& a : e.node().args) run(a);
    }
  } rec{seen};
  rec.run(e);
  return seen.size();
}

namespace {

// precedence levels: 0 sum, 1 product, 2 power/unary
void render(const Expr& e, std::ostringstream& out, int parens) {
  const ExprNode& n = e.node();
  switch (n.op) {
    case ExprOp::Constant: {
      bool frac = n.value.den() != 1;
      bool negative = n.value.num() < 0;
      if ((frac && parens >= 1) || (negative && parens >= 1)) {
        out << "(" << n.value.str() << ")";
      } else {
        out << n.value.str();
      }
      return;
    }
    case ExprOp::Var:
      out << n.var.str();
      return;
    case ExprOp::Add: {
      if (parens >= 1) out << "(";
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out << " + ";
        render(n.args[i], out, 1);
      }
      if (parens >= 1) out << ")";
      return;
    }
    case ExprOp::Mul: {
      if (parens >= 2) out << "(";
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out << "*";
        render(n.args[i], out, 2);
      }
      if (parens >= 2) out << ")";
      return;
    }
    case ExprOp::Div: {
      if (parens >= 2) out << "(";
      render(n.args[0], out, 2);
      out << " / ";
      render(n.args[1], out, 2);
      if (parens >= 2) out << ")";
      return;
    }
    case ExprOp::Pow:
      render(n.args[0], out, 2);
      out << "^" << n.exponent;
      return;
    case ExprOp::Sin:
      out << "sin(";
      render(n.args[0], out, 0);
      out << ")";
      return;
    case ExprOp::Cos:
      out << "cos(";
      render(n.args[0], out, 0);
      out << ")";
      return;
    case ExprOp::Atan2:
      out << "atan2(";
      render(n.args[0], out, 0);
      out << ", ";
      render(n.args[1], out, 0);
      out << ")";
      return;
  }
}

}  // namespace

std::string Expr::str() const {
  std::ostringstream out;
  render(*this, out, 0);
  return out.str();
}

}  // namespace jetcheck
