#include "jetcheck/system.hpp"

#include <algorithm>
#include <set>

#include "jetcheck/errors.hpp"

namespace jetcheck {

ControlSystem ControlSystem::make(std::string name,
                                  std::vector<Variable> states,
                                  std::vector<Variable> controls,
                                  std::vector<Expr> dynamics, const Sampler& s,
                                  std::map<std::string, Rational> constants) {
  if (states.empty() || controls.empty())
    throw NotAControlSystemError("a control system needs n >= 1 and m >= 1");
  if (dynamics.size() != states.size())
    throw Error("system '" + name + "': " + std::to_string(dynamics.size()) +
                " dynamics entries for " + std::to_string(states.size()) +
                " states");

  ControlSystem sys;
  sys.name_ = std::move(name);
  for (auto& v : states) v.kind = VarKind::State;
  for (auto& v : controls) v.kind = VarKind::ControlJet;
  sys.states_ = std::move(states);
  sys.controls_ = std::move(controls);
  sys.dynamics_ = std::move(dynamics);
  sys.constants_ = std::move(constants);
  sys.index();

  std::set<std::pair<std::string, int>> seen;
  for (const auto& v : sys.states_)
    if (!seen.insert({v.name, v.order}).second)
      throw Error("system '" + sys.name_ + "': duplicate coordinate " + v.str());
  for (const auto& v : sys.controls_)
    if (!seen.insert({v.name, v.order}).second)
      throw Error("system '" + sys.name_ + "': duplicate coordinate " + v.str());

  for (std::size_t i = 0; i < sys.dynamics_.size(); ++i) {
    for (const auto& v : free_variables(sys.dynamics_[i])) {
      auto c = sys.control_base_order_.find(v.name);
      bool exact_control =
          c != sys.control_base_order_.end() && v.order == c->second;
      if (!sys.is_state(v) && !exact_control)
        throw Error("system '" + sys.name_ + "': dynamics for " +
                    sys.states_[i].str() + " reference unknown variable " +
                    v.str());
    }
  }

  int rank = generic_rank(sys.control_jacobian(), s);
  if (rank < sys.m())
    throw NotAControlSystemError(
        "not a control system: df/du has generic rank " +
        std::to_string(rank) + " < m = " + std::to_string(sys.m()));
  return sys;
}

void ControlSystem::index() {
  state_index_.clear();
  control_base_order_.clear();
  for (std::size_t i = 0; i < states_.size(); ++i)
    state_index_[{states_[i].name, states_[i].order}] = static_cast<int>(i);
  for (const auto& c : controls_) control_base_order_[c.name] = c.order;
}

bool ControlSystem::is_state(const Variable& v) const {
  return state_index_.count({v.name, v.order}) > 0;
}

bool ControlSystem::is_coordinate(const Variable& v) const {
  if (is_state(v)) return true;
  auto it = control_base_order_.find(v.name);
  return it != control_base_order_.end() && v.order >= it->second;
}

Expr ControlSystem::coordinate_derivative(const Variable& v) const {
  auto st = state_index_.find({v.name, v.order});
  if (st != state_index_.end()) return dynamics_[st->second];
  auto it = control_base_order_.find(v.name);
  if (it != control_base_order_.end() && v.order >= it->second)
    return Expr::variable(jet_var(v.name, v.order + 1));
  throw Error("system '" + name_ + "': " + v.str() + " is not a coordinate");
}

Expr ControlSystem::total_derivative(const Expr& e) const {
  std::vector<Expr> terms;
  for (const auto& v : free_variables(e)) {
    Expr de = differentiate(e, v);
    if (de.is_zero()) continue;
    terms.push_back(coordinate_derivative(v) * de);
  }
  return Expr::add(std::move(terms));
}

std::vector<Variable> ControlSystem::coordinates(int jet_order) const {
  std::vector<Variable> out = states_;
  for (int k = 0; k <= jet_order; ++k)
    for (const auto& c : controls_) out.push_back(jet_var(c.name, c.order + k));
  return out;
}

std::vector<Variable> ControlSystem::level_coordinates(int k) const {
  if (k == 0) return states_;
  std::vector<Variable> out;
  out.reserve(controls_.size());
  for (const auto& c : controls_)
    out.push_back(jet_var(c.name, c.order + k - 1));
  return out;
}

Coframe ControlSystem::contact_coframe(int depth) const {
  if (depth < 0) throw Error("coframe depth must be nonnegative");
  Coframe cf;
  std::vector<OneForm> level0;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    OneForm f;
    f.dt_coefficient = Expr::neg(dynamics_[i]);
    f.jet_coefficients = {{states_[i], Expr::constant(Rational(1))}};
    level0.push_back(std::move(f));
  }
  cf.levels.push_back(std::move(level0));
  for (int k = 1; k <= depth; ++k) {
    std::vector<OneForm> level;
    for (const auto& c : controls_) {
      OneForm f;
      f.dt_coefficient =
          Expr::neg(Expr::variable(jet_var(c.name, c.order + k)));
      f.jet_coefficients = {{jet_var(c.name, c.order + k - 1),
                             Expr::constant(Rational(1))}};
      level.push_back(std::move(f));
    }
    cf.levels.push_back(std::move(level));
  }
  return cf;
}

ControlSystem ControlSystem::total_prolong(int k) const {
  if (k < 0) throw Error("prolongation order must be nonnegative");
  if (k == 0) return *this;

  ControlSystem sys;
  sys.name_ = name_ + "^(" + std::to_string(k) + ")";
  sys.states_ = states_;
  sys.dynamics_ = dynamics_;
  sys.constants_ = constants_;
  for (int j = 0; j < k; ++j) {
    for (const auto& c : controls_) {
      sys.states_.push_back(state_var(c.name, c.order + j));
      sys.dynamics_.push_back(
          Expr::variable(jet_var(c.name, c.order + j + 1)));
    }
  }
  for (const auto& c : controls_)
    sys.controls_.push_back(jet_var(c.name, c.order + k));
  sys.index();
  return sys;
}

ControlSystem ControlSystem::partial_prolong(
    const std::map<std::string, int>& orders) const {
  for (const auto& [cname, k] : orders) {
    if (k < 0) throw Error("prolongation order must be nonnegative");
    if (!control_base_order_.count(cname))
      throw Error("system '" + name_ + "': no control named " + cname);
  }

  ControlSystem sys;
  sys.name_ = name_ + "'";
  sys.states_ = states_;
  sys.dynamics_ = dynamics_;
  sys.constants_ = constants_;
  bool changed = false;
  for (const auto& c : controls_) {
    auto it = orders.find(c.name);
    int k = it == orders.end() ? 0 : it->second;
    for (int j = 0; j < k; ++j) {
      sys.states_.push_back(state_var(c.name, c.order + j));
      sys.dynamics_.push_back(
          Expr::variable(jet_var(c.name, c.order + j + 1)));
    }
    sys.controls_.push_back(jet_var(c.name, c.order + k));
    if (k > 0) changed = true;
  }
  if (!changed) return *this;
  sys.index();
  return sys;
}

ExprMatrix ControlSystem::control_jacobian() const {
  ExprMatrix jac(n(), m());
  for (int i = 0; i < n(); ++i)
    for (int a = 0; a < m(); ++a)
      jac.at(i, a) = differentiate(dynamics_[i], controls_[a]);
  return jac;
}

Scope ControlSystem::scope(int jet_order) const {
  Scope sc;
  for (const auto& v : states_) sc.add_variable(v);
  for (int k = 0; k <= jet_order; ++k)
    for (const auto& c : controls_)
      sc.add_variable(jet_var(c.name, c.order + k));
  for (const auto& [cname, value] : constants_) sc.add_constant(cname, value);
  return sc;
}

}  // namespace jetcheck
